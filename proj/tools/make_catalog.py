#!/usr/bin/env python3
"""Regenerate data/groups.txt, the permutation-group catalog.

Each group is built from an explicit construction (natural action, direct
product, or the regular representation of a semidirect/dicyclic product),
closed under composition, and checked against its declared order.  The
construction used is written above each entry in the catalog.

    python3 tools/make_catalog.py > data/groups.txt
"""

import itertools
import sys


# --- permutations on 0..n-1 -------------------------------------------------

def compose(p, q):
    """x -> q(p(x)), i.e. apply p first."""
    return tuple(q[i] for i in p)


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def cycles(degree, *cs):
    """Permutation from 1-based cycles."""
    img = list(range(degree))
    for c in cs:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def shift(perm, offset, degree):
    img = list(range(degree))
    for i, v in enumerate(perm):
        img[i + offset] = v + offset
    return tuple(img)


def direct(*groups):
    """Direct product of permutation groups given as (degree, gens)."""
    total = sum(d for d, _ in groups)
    gens = []
    off = 0
    for d, gs in groups:
        gens.extend(shift(g, off, total) for g in gs)
        off += d
    return total, gens


def regular(elements, mul, gens):
    """Right regular representation: x -> x*g."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    return n, [tuple(index[mul(e, g)] for e in elements) for g in gens]


# --- small building blocks --------------------------------------------------

def cyclic(n):
    if n == 1:
        return 1, []
    return n, [cycles(n, list(range(1, n + 1)))]


def dihedral(n):
    """Symmetries of the n-gon, order 2n."""
    if n == 2:
        return 4, [cycles(4, [1, 2], [3, 4]), cycles(4, [1, 3], [2, 4])]
    refl = [[i, n + 2 - i] for i in range(2, n + 1) if i < n + 2 - i]
    return n, [cycles(n, list(range(1, n + 1))), cycles(n, *refl)]


def symmetric(n):
    return n, [cycles(n, list(range(1, n + 1))), cycles(n, [1, 2])]


def alternating(n):
    if n == 4:
        return 4, [cycles(4, [1, 2, 3]), cycles(4, [1, 2], [3, 4])]
    if n == 5:
        return 5, [cycles(5, [1, 2, 3, 4, 5]), cycles(5, [1, 2, 3])]
    if n == 6:
        return 6, [cycles(6, [1, 2, 3, 4, 5]), cycles(6, [4, 5, 6])]
    raise ValueError(n)


def semidirect_abelian(moduli, k_order, act):
    """(Z_m1 x ... x Z_mt) : Z_k with the generator of Z_k acting by `act`.

    Elements are (v, j); (v, j)(w, l) = (v + act^j(w), j + l).
    """
    def act_pow(v, j):
        for _ in range(j % k_order):
            v = act(v)
        return v

    def mul(x, y):
        v, j = x
        w, l = y
        w2 = act_pow(w, j)
        return (tuple((a + b) % m for a, b, m in zip(v, w2, moduli)), (j + l) % k_order)

    elements = [(v, j) for v in itertools.product(*[range(m) for m in moduli])
                for j in range(k_order)]
    zero = tuple(0 for _ in moduli)
    gens = []
    for i in range(len(moduli)):
        e = list(zero)
        e[i] = 1
        gens.append((tuple(e), 0))
    gens.append((zero, 1 % k_order))
    return regular(elements, mul, gens)


def dicyclic(n):
    """Dic_n of order 4n: a^{2n} = 1, b^2 = a^n, b a b^-1 = a^-1."""
    m = 2 * n

    def mul(x, y):
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    elements = [(i, j) for i in range(m) for j in range(2)]
    return regular(elements, mul, [(1, 0), (0, 1)])


def matrix_group_on_vectors(p, dim, mats):
    """Action of matrices over F_p on the nonzero vectors of F_p^dim."""
    vecs = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}

    def apply(mat, v):
        return tuple(sum(mat[r][c] * v[c] for c in range(dim)) % p for r in range(dim))

    gens = [tuple(index[apply(m, v)] for v in vecs) for m in mats]
    return len(vecs), gens


def projective_action(p, dim, mats):
    """Action on the points of PG(dim-1, p)."""
    def normalize(v):
        for x in v:
            if x:
                inv = pow(x, p - 2, p)
                return tuple((y * inv) % p for y in v)
        raise ValueError

    pts = sorted({normalize(v) for v in itertools.product(range(p), repeat=dim) if any(v)})
    index = {v: i for i, v in enumerate(pts)}

    def apply(mat, v):
        return normalize(tuple(sum(mat[r][c] * v[c] for c in range(dim)) % p for r in range(dim)))

    gens = [tuple(index[apply(m, v)] for v in pts) for m in mats]
    return len(pts), gens


def elementary_abelian_action(dim, blocks):
    """Z_2^dim : K given by matrices over F_2, as affine maps of F_2^dim."""
    vecs = list(itertools.product(range(2), repeat=dim))
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        gens.append(tuple(index[tuple((a + b) % 2 for a, b in zip(v, e))] for v in vecs))
    for mat in blocks:
        gens.append(tuple(index[tuple(sum(mat[r][c] * v[c] for c in range(dim)) % 2
                                      for r in range(dim))] for v in vecs))
    return len(vecs), gens


def block_diag(*ms):
    n = sum(len(m) for m in ms)
    out = [[0] * n for _ in range(n)]
    off = 0
    for m in ms:
        for r in range(len(m)):
            for c in range(len(m)):
                out[off + r][off + c] = m[r][c]
        off += len(m)
    return out


# --- the catalog ------------------------------------------------------------

ENTRIES = []


def add(order, index, name, note, group):
    ENTRIES.append((order, index, name, note, group))


def build():
    add(1, 1, "1", "trivial group", (1, []))
    add(2, 1, "Z2", "2-cycle", cyclic(2))
    add(3, 1, "Z3", "3-cycle", cyclic(3))
    add(4, 1, "Z4", "4-cycle", cyclic(4))
    add(4, 2, "Z2^2", "Klein four group, regular", dihedral(2))
    add(5, 1, "Z5", "5-cycle", cyclic(5))
    add(6, 1, "S3", "natural action", symmetric(3))
    add(6, 2, "Z6", "6-cycle", cyclic(6))
    add(7, 1, "Z7", "7-cycle", cyclic(7))
    add(8, 1, "Z8", "8-cycle", cyclic(8))
    add(8, 2, "Z2xZ4", "disjoint 2-cycle and 4-cycle", direct(cyclic(2), cyclic(4)))
    add(8, 3, "D4", "symmetries of the square", dihedral(4))
    add(8, 4, "Q8", "regular representation of Dic_2 = {+-1,+-i,+-j,+-k}", dicyclic(2))
    add(8, 5, "Z2^3", "three disjoint 2-cycles", direct(cyclic(2), cyclic(2), cyclic(2)))
    add(9, 1, "Z9", "9-cycle", cyclic(9))
    add(9, 2, "Z3^2", "two disjoint 3-cycles", direct(cyclic(3), cyclic(3)))
    add(10, 1, "D5", "symmetries of the pentagon", dihedral(5))
    add(10, 2, "Z10", "10-cycle", cyclic(10))
    add(11, 1, "Z11", "11-cycle", cyclic(11))
    add(12, 1, "Z3:Z4", "regular representation of Dic_3", dicyclic(3))
    add(12, 2, "Z12", "12-cycle", cyclic(12))
    add(12, 3, "A4", "even permutations of 4 points", alternating(4))
    add(12, 4, "D6", "symmetries of the hexagon", dihedral(6))
    add(12, 5, "Z2xZ6", "disjoint 2-cycle and 6-cycle", direct(cyclic(2), cyclic(6)))
    add(13, 1, "Z13", "13-cycle", cyclic(13))
    add(14, 1, "D7", "symmetries of the heptagon", dihedral(7))
    add(14, 2, "Z14", "14-cycle", cyclic(14))
    add(15, 1, "Z15", "15-cycle", cyclic(15))
    add(16, 1, "Z16", "16-cycle", cyclic(16))
    add(16, 2, "Z4^2", "two disjoint 4-cycles", direct(cyclic(4), cyclic(4)))
    add(16, 3, "G(16,3)",
        "(Z4 x Z2) : Z2 = <a,b,c | a^4, b^2, c^2, [a,b], [b,c], c a c = a b>, regular",
        semidirect_abelian((4, 2), 2, lambda v: (v[0], (v[1] + v[0]) % 2)))
    add(16, 4, "Z4:Z4", "Z4 : Z4, generator acting by inversion, regular",
        semidirect_abelian((4,), 4, lambda v: ((-v[0]) % 4,)))
    add(16, 5, "Z2xZ8", "disjoint 2-cycle and 8-cycle", direct(cyclic(2), cyclic(8)))
    add(16, 6, "M16", "Z8 : Z2 acting by x -> 5x, regular",
        semidirect_abelian((8,), 2, lambda v: ((5 * v[0]) % 8,)))
    add(16, 7, "D8", "symmetries of the octagon", dihedral(8))
    add(16, 8, "QD16", "Z8 : Z2 acting by x -> 3x, regular",
        semidirect_abelian((8,), 2, lambda v: ((3 * v[0]) % 8,)))
    add(16, 9, "Q16", "regular representation of Dic_4", dicyclic(4))
    add(16, 10, "Z2^2xZ4", "two 2-cycles and a 4-cycle",
        direct(cyclic(2), cyclic(2), cyclic(4)))
    add(16, 11, "Z2xD4", "D4 on 4 points times a disjoint 2-cycle", direct(cyclic(2), dihedral(4)))
    add(16, 12, "Z2xQ8", "Q8 regular times a disjoint 2-cycle", direct(cyclic(2), dicyclic(2)))
    add(16, 13, "Z4oD4",
        "(Z4 x Z2) : Z2 with c a c = a, c b c = a^2 b (Pauli group), regular",
        semidirect_abelian((4, 2), 2, lambda v: ((v[0] + 2 * v[1]) % 4, v[1])))
    add(16, 14, "Z2^4", "four disjoint 2-cycles",
        direct(cyclic(2), cyclic(2), cyclic(2), cyclic(2)))
    add(17, 1, "Z17", "17-cycle", cyclic(17))
    add(18, 1, "D9", "symmetries of the 9-gon", dihedral(9))
    add(18, 2, "Z18", "18-cycle", cyclic(18))
    add(18, 3, "Z3xS3", "3-cycle times S3 on 3 further points", direct(cyclic(3), symmetric(3)))
    add(18, 4, "Z3^2:Z2", "Z3^2 : Z2 acting by -Id, regular",
        semidirect_abelian((3, 3), 2, lambda v: ((-v[0]) % 3, (-v[1]) % 3)))
    add(18, 5, "Z3xZ6", "disjoint 3-cycle and 6-cycle", direct(cyclic(3), cyclic(6)))
    add(19, 1, "Z19", "19-cycle", cyclic(19))
    add(20, 1, "Z5:Z4", "regular representation of Dic_5", dicyclic(5))
    add(20, 2, "Z20", "20-cycle", cyclic(20))
    add(20, 3, "F20", "Z5 : Z4 acting by x -> 2x, regular",
        semidirect_abelian((5,), 4, lambda v: ((2 * v[0]) % 5,)))
    add(20, 4, "D10", "symmetries of the 10-gon", dihedral(10))
    add(20, 5, "Z2xZ10", "disjoint 2-cycle and 10-cycle", direct(cyclic(2), cyclic(10)))
    add(21, 1, "Z7:Z3", "Z7 : Z3 acting by x -> 2x, regular",
        semidirect_abelian((7,), 3, lambda v: ((2 * v[0]) % 7,)))
    add(21, 2, "Z21", "21-cycle", cyclic(21))
    add(22, 1, "D11", "symmetries of the 11-gon", dihedral(11))
    add(22, 2, "Z22", "22-cycle", cyclic(22))
    add(23, 1, "Z23", "23-cycle", cyclic(23))
    add(24, 1, "Z3:Z8", "Z3 : Z8, generator acting by inversion, regular",
        semidirect_abelian((3,), 8, lambda v: ((-v[0]) % 3,)))
    add(24, 2, "Z24", "24-cycle", cyclic(24))
    add(24, 3, "SL(2,3)", "SL(2,3) on the 8 nonzero vectors of F_3^2",
        matrix_group_on_vectors(3, 2, [((1, 1), (0, 1)), ((0, 2), (1, 0))]))
    add(24, 4, "Z3:Q8", "regular representation of Dic_6", dicyclic(6))
    add(24, 5, "Z4xS3", "4-cycle times S3", direct(cyclic(4), symmetric(3)))
    add(24, 6, "D12", "symmetries of the 12-gon", dihedral(12))
    add(24, 7, "Z2xDic3", "2-cycle times Dic_3 regular", direct(cyclic(2), dicyclic(3)))
    add(24, 8, "(Z6xZ2):Z2",
        "(Z3 x Z2 x Z2) : Z2, c inverting Z3 and swapping the Z2 factors, regular",
        semidirect_abelian((3, 2, 2), 2, lambda v: ((-v[0]) % 3, v[2], v[1])))
    add(24, 9, "Z2xZ12", "disjoint 2-cycle and 12-cycle", direct(cyclic(2), cyclic(12)))
    add(24, 10, "Z3xD4", "3-cycle times D4", direct(cyclic(3), dihedral(4)))
    add(24, 11, "Z3xQ8", "3-cycle times Q8 regular", direct(cyclic(3), dicyclic(2)))
    add(24, 12, "S4", "natural action", symmetric(4))
    add(24, 13, "Z2xA4",
        "A4 times a 2-cycle; this is Z2^3 : Z3 with Z3 permuting coordinates",
        direct(cyclic(2), alternating(4)))
    add(24, 14, "Z2^2xS3", "two 2-cycles times S3", direct(cyclic(2), cyclic(2), symmetric(3)))
    add(24, 15, "Z2^2xZ6", "two 2-cycles and a 6-cycle",
        direct(cyclic(2), cyclic(2), cyclic(6)))
    add(25, 1, "Z25", "25-cycle", cyclic(25))
    add(25, 2, "Z5^2", "two disjoint 5-cycles", direct(cyclic(5), cyclic(5)))
    add(32, 27, "G(32,27)",
        "Z2^2 wr Z2 = Z2^4 : Z2, the Z2 swapping two regular Klein four groups; "
        "the swap is conjugate to [[1,0],[1,1]] + [[1,0],[1,1]] over F_2, so this is "
        "also the group written Z2^4 : Z2",
        (8, [cycles(8, [1, 2], [3, 4]), cycles(8, [1, 3], [2, 4]),
             cycles(8, [5, 6], [7, 8]), cycles(8, [5, 7], [6, 8]),
             cycles(8, [1, 5], [2, 6], [3, 7], [4, 8])]))
    add(36, 10, "S3xS3", "S3 on {1,2,3} times S3 on {4,5,6}", direct(symmetric(3), symmetric(3)))
    add(48, 48, "Z2xS4", "S4 natural times a disjoint 2-cycle", direct(cyclic(2), symmetric(4)))
    add(60, 5, "A5", "even permutations of 5 points", alternating(5))
    add(75, 2, "Z5^2:Z3",
        "affine maps x -> Ax + b of F_5^2 with A = [[0,4],[1,4]] of order 3",
        (25, affine_f5_order3()))
    # The two groups below have no small-groups id recorded here: index 1001 is local.
    add(96, 1001, "Z2^4:S3",
        "affine maps of F_2^4; S3 = GL(2,2) acting diagonally on F_2^2 + F_2^2",
        elementary_abelian_action(4, [block_diag(((0, 1), (1, 0)), ((0, 1), (1, 0))),
                                      block_diag(((1, 1), (1, 0)), ((1, 1), (1, 0)))]))
    add(120, 34, "S5", "natural action", symmetric(5))
    add(160, 1001, "Z2^4:D5",
        "even sign changes of 5 coordinates extended by D5 permuting them; "
        "degree 10 action on +-e_1..+-e_5",
        (10, signed_d5()))
    add(168, 42, "PSL(2,7)", "GL(3,2) on the 7 points of the Fano plane",
        projective_action(2, 3, [((1, 1, 0), (0, 1, 0), (0, 0, 1)),
                                 ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
                                 ((1, 0, 0), (0, 0, 1), (0, 1, 1))]))
    add(240, 189, "Z2xS5", "S5 natural times a disjoint 2-cycle", direct(cyclic(2), symmetric(5)))
    add(360, 118, "A6", "even permutations of 6 points", alternating(6))


def affine_f5_order3():
    pts = [(x, y) for x in range(5) for y in range(5)]
    index = {p: i for i, p in enumerate(pts)}
    a = ((0, 4), (1, 4))
    lin = tuple(index[((a[0][0] * x + a[0][1] * y) % 5, (a[1][0] * x + a[1][1] * y) % 5)]
                for x, y in pts)
    tx = tuple(index[((x + 1) % 5, y)] for x, y in pts)
    ty = tuple(index[(x, (y + 1) % 5)] for x, y in pts)
    return [tx, ty, lin]


def signed_d5():
    # point 2i is +e_{i+1}, point 2i+1 is -e_{i+1}
    def perm_from(sigma, signs):
        img = [0] * 10
        for i in range(5):
            j = sigma[i]
            flip = signs[j]
            img[2 * i] = 2 * j + flip
            img[2 * i + 1] = 2 * j + (1 - flip)
        return tuple(img)

    rot = perm_from([1, 2, 3, 4, 0], [0] * 5)
    refl = perm_from([0, 4, 3, 2, 1], [0] * 5)
    flip12 = perm_from([0, 1, 2, 3, 4], [1, 1, 0, 0, 0])
    return [rot, refl, flip12]


def main():
    build()
    out = sys.stdout
    out.write("# Permutation-group catalog.\n")
    out.write("# Generated by tools/make_catalog.py; each entry documents its realization.\n")
    out.write("# group <order> <index> <degree> <name>, then one 'perm' line per generator, 'end'.\n")
    out.write("# Indices follow the small-groups library numbering, except index 1001 (local).\n")
    for order, index, name, note, (degree, gens) in ENTRIES:
        got = len(closure(gens, degree))
        if got != order:
            raise SystemExit(f"{name}: closure has order {got}, expected {order}")
        out.write("\n")
        out.write(f"# {name}: {note}\n")
        out.write(f"group {order} {index} {degree} {name}\n")
        for g in gens:
            out.write("perm " + " ".join(str(v + 1) for v in g) + "\n")
        out.write("end\n")


if __name__ == "__main__":
    main()

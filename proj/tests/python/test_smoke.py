from fractions import Fraction

import pytest

import pqs


def test_catalog_and_groups():
    cat = pqs.default_catalog()
    assert len(cat) == 87
    a5 = cat.find("A5")
    assert a5.order == 60 and a5.label == (60, 5)
    assert cat.find("G(60,5)").name == "A5"
    assert cat.find("nope") is None
    e = a5.element(7)
    assert a5.find(e) == 7
    with pytest.raises(IndexError):
        a5.element(60)


def test_vectors_and_invariants():
    a5 = pqs.default_catalog().find("A5")
    v1 = pqs.enumerate_vectors(a5, "2,5^2")
    v2 = pqs.enumerate_vectors(a5, "3^4")
    assert v1 and v2
    # 120 vectors form two Inn-orbits, (5A,5B) and (5B,5A); the braid swapping
    # the two order-5 entries joins them
    assert len(v1) == 120
    assert pqs.hurwitz_class_count(a5, "2,5^2") == 1
    inv = pqs.invariants(a5, v1[0], v2[0])
    assert (inv["g1"], inv["g2"]) == (4, 21)
    assert inv["kx2"] == 8 and inv["chi"] == 1
    assert inv["free"] and inv["basket"] == "-"
    assert inv["h1"] == "Z_3^2 x Z_15"


def test_nonfree_invariants():
    a5 = pqs.default_catalog().find("A5")
    v1 = pqs.enumerate_vectors(a5, "3,5^2")[0]
    v2 = pqs.enumerate_vectors(a5, "2^3,3")[0]
    inv = pqs.surface_invariants(a5, v1, v2)
    assert inv["kx2"] == Fraction(16, 3)
    assert inv["basket"] == "1/3,2/3"
    assert inv["ks2"] == 5


def test_first_homology_rejects_bad_vectors():
    a5 = pqs.default_catalog().find("A5")
    with pytest.raises(ValueError):
        pqs.first_homology(a5, [0, 0, 0], [0, 0, 0])


def test_classify_and_records():
    recs = pqs.classify(6, groups=["A5"], jobs=2)
    rows = {(r["t1"], r["t2"]): r for r in recs}
    r = rows[("0;2,3,3,3", "0;2,5,5")]
    assert r["basket"] == "1/2^2" and r["h1"] == "Z_3 x Z_15" and r["n"] == 1
    assert pqs.parse_records(r["line"])[0]["line"] == r["line"]
    assert pqs.classify(8, groups=["Z2"]) == []
    with pytest.raises(KeyError):
        pqs.classify(8, groups=["no such group"])


def test_verify_spot_rows(tmp_path):
    f = tmp_path / "rows.tsv"
    f.write_text(
        "2\t1/2^6\t4^3\t4^3\t16\t2\tZ4^2\t1\tZ_2^3\t-\n"
        "8\t-\tmixed\tmixed\t64\t92\tG(64,92)\t1\t-\tmixed-unsupported\n"
    )
    out = pqs.verify(f)
    assert [r["status"] for r in out] == ["pass", "unverifiable-mixed"]


def test_geometry_helpers():
    assert pqs.hj_expansion(5, 2) == [3, 2]
    assert pqs.resolution_correction(4, 1) == 1
    assert pqs.resolution_correction(5, 4) == 0
    s, u, v = pqs.smith_normal_form([[2, 4], [6, 8]])
    assert s == [[2, 0], [0, 4]]
    big = 10**30
    s, _, _ = pqs.smith_normal_form([[big, 0], [0, 1]])
    assert s == [[1, 0], [0, big]]


def test_covers():
    d = pqs.data_dir() / "covers"
    bd = pqs.check_building_data((d / "burniat.bd").read_text())
    assert bd["violations"] == [] and bd["irreducible"] and bd["r"] == 2
    assert len(bd["equations"]) == 6
    kn = pqs.check_building_data((d / "keum_naie.bd").read_text())
    assert kn["double_cover"] == (16, 4)
    for m in range(3):
        conf = pqs.burniat_configuration((d / f"burniat_m{m}.lines").read_text())
        assert conf["m"] == m and conf["k2"] == 6 - m
    with pytest.raises(pqs.BuildingDataError):
        pqs.check_building_data("D 01 1 0 0 0\n")

"""Product-quotient surface classification.

The heavy lifting happens in the compiled ``_pqs`` module; this package adds
default data paths and a few conveniences.
"""

from functools import lru_cache
from pathlib import Path

from ._pqs import (
    BuildingDataError,
    Catalog,
    CatalogError,
    ConfigurationError,
    Group,
    RecordError,
    __version__,
    burniat_configuration,
    check_building_data,
    enumerate_vectors,
    first_homology,
    hj_expansion,
    hurwitz_class_count,
    parse_records,
    resolution_correction,
    smith_normal_form,
    surface_invariants,
)
from . import _pqs

__all__ = [
    "BuildingDataError",
    "Catalog",
    "CatalogError",
    "ConfigurationError",
    "Group",
    "RecordError",
    "__version__",
    "burniat_configuration",
    "check_building_data",
    "classify",
    "data_dir",
    "default_catalog",
    "enumerate_vectors",
    "first_homology",
    "hj_expansion",
    "hurwitz_class_count",
    "invariants",
    "parse_records",
    "resolution_correction",
    "smith_normal_form",
    "surface_invariants",
    "verify",
]


def data_dir() -> Path:
    """Shipped data: next to the package when installed, else the source tree."""
    here = Path(__file__).with_name("data")
    return here if (here / "groups.txt").exists() else Path(_pqs.DATA_DIR)


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    return Catalog.load(str(data_dir() / "groups.txt"))


def _group(group, catalog):
    if isinstance(group, Group):
        return group
    found = (catalog or default_catalog()).find(group)
    if found is None:
        raise KeyError(f"group {group!r} is not in the catalog")
    return found


def classify(k2, catalog=None, groups=None, require_free=False, jobs=1, max_order=2000, max_r=6, max_m=12):
    """Records with K^2 = k2, as dicts; ``groups`` restricts the sweep by label or name."""
    catalog = catalog or default_catalog()
    if groups is not None:
        catalog = catalog.subset([g if isinstance(g, str) else "G(%d,%d)" % g.label for g in groups])
    return _pqs.classify(catalog, k2, require_free, jobs, max_order, max_r, max_m)


def verify(fixtures=None, catalog=None, jobs=1):
    """Re-run fixture rows; returns one dict per merged row with a ``status`` key."""
    path = Path(fixtures) if fixtures else data_dir() / "fixtures" / "tables.tsv"
    return _pqs.verify(path.read_text(), catalog or default_catalog(), jobs)


def invariants(group, v1, v2, catalog=None):
    """Surface invariants plus H1 for branch element indices v1, v2."""
    g = _group(group, catalog)
    out = surface_invariants(g, v1, v2)
    out["h1"] = first_homology(g, v1, v2)
    return out

"""Whirling dynamics on families of functions [n] -> [k]."""
from .words import FamilySpec, FunctionWord, Kind, enumerate_family, is_member, make_word, parse_family, parse_word
from .whirl import WhirlOrder, apply_order, apply_order_inverse, whirl_at, whirl_direct_at, whirl_inverse_at
from .orbits import (
    Orbit,
    OrbitBoard,
    Position,
    StatisticSpec,
    check_homomesy,
    evaluate_statistic,
    map_order,
    orbit_average,
    orbit_of,
    orbit_partition,
    parse_statistic,
)

__version__ = "0.1.0"


def schema_path(name: str = "report"):
    """Path of a shipped JSON schema: ``report``, ``sweep`` or ``certificate``."""
    from importlib import resources

    return resources.files(__name__) / "schemas" / f"{name}.schema.json"

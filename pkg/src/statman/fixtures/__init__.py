"""Built-in manifold fixtures shipped as ``.sm`` documents."""

from importlib import resources

from ..errors import StructuralError

FIXTURES = (
    "kenmotsu5d",
    "hyperbolic2",
    "flat2-einstein",
    "flat3-einstein",
    "kenmotsu5d-sub-invariant",
)

# parameter values used when a fixture is evaluated numerically or audited by default
DEFAULT_ASSIGNMENT = {
    "kenmotsu5d": {"a": 0},
    "kenmotsu5d-sub-invariant": {"a": 0},
    "flat3-einstein": {"b": 2},
    "hyperbolic2": {},
    "flat2-einstein": {},
}


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise StructuralError(f"unknown fixture {name!r}; built-ins are {', '.join(FIXTURES)}")
    return resources.files(__name__).joinpath(f"{name}.sm").read_text(encoding="utf-8")

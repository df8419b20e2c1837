"""dynlab: numerical experiments with iterated general meromorphic maps.

Parses complex expressions, iterates them on the Riemann sphere,
classifies orbit behavior (escape, finite Baker points, cycles,
wandering drift), finds periodic points, and numerically checks
commutation and Julia-set agreement for translated map pairs.
"""

from .expr import differentiate, evaluate, parse, to_source
from .fndef import FnDef, fn_from_source
from .orbits import (OrbitConfig, OrbitKind, OrbitOutcome, band_index,
                     classify_orbit, iterate_orbit)
from .periodic import (PeriodicPoint, TransportCheck, classify_multiplier,
                       find_periodic, multiplier_transport)
from .raster import (ClassRaster, RunConfig, export_json, export_png,
                     import_json, render)
from .singular import (Rect, SingularSet, iterated_singular_set, preimages,
                       singular_set)
from .sphere import XComplex, chordal, guard
from .verify import (AgreementReport, SectorReport, baker_sectors,
                     check_commutation, julia_equality, julia_mask,
                     translation_invariance)

__version__ = "0.1.0"

__all__ = [
    "differentiate", "evaluate", "parse", "to_source",
    "FnDef", "fn_from_source",
    "OrbitConfig", "OrbitKind", "OrbitOutcome", "band_index",
    "classify_orbit", "iterate_orbit",
    "PeriodicPoint", "TransportCheck", "classify_multiplier",
    "find_periodic", "multiplier_transport",
    "ClassRaster", "RunConfig", "export_json", "export_png",
    "import_json", "render",
    "Rect", "SingularSet", "iterated_singular_set", "preimages",
    "singular_set",
    "XComplex", "chordal", "guard",
    "AgreementReport", "SectorReport", "baker_sectors",
    "check_commutation", "julia_equality", "julia_mask",
    "translation_invariance",
    "__version__",
]

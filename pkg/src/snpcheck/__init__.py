"""Analyzer for spiking neural P systems without delay."""

__version__ = "0.1.0"

from .behavior import (  # noqa: E402
    Answer,
    Verdict,
    check_bounded,
    check_deadlock_free,
    check_live,
    check_quasi_live,
    check_reversible,
    check_safe,
)
from .dsl import load_system, parse_system  # noqa: E402
from .graph import ConfigGraph, ExploreLimits, directly_reachable, explore, reachable  # noqa: E402
from .structural import (  # noqa: E402
    check_conservative,
    check_partial_conservative,
    check_structurally_bounded,
    has_synapse_cycle,
    struct_matrix,
)
from .system import (  # noqa: E402
    SNPSystem,
    applicable_rules,
    build_matrix,
    enumerate_spiking_vectors,
    forgetting_rule,
    net_gain,
    run,
    spiking_rule,
    step,
    validate,
)

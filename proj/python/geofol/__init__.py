"""Frame-based pseudo-Riemannian geometry engine (Python bindings).

The compiled extension carries the actual implementations; this package
re-exports them.  Two layouts are supported:

* installed wheel: ``geofol._core`` lives inside the package;
* build tree: ``_core`` sits on ``PYTHONPATH`` next to the sources.
"""

try:
    from ._core import (  # type: ignore[attr-defined]
        chi,
        config_reference,
        exact_flow_k,
        exact_flow_w,
        g0_matrix,
        g_xx,
        lightlike_gram,
        run_scenario,
        scenario_names,
        signature,
        typechange_params,
    )
except ImportError:  # build-tree layout
    from _core import (  # type: ignore[no-redef]
        chi,
        config_reference,
        exact_flow_k,
        exact_flow_w,
        g0_matrix,
        g_xx,
        lightlike_gram,
        run_scenario,
        scenario_names,
        signature,
        typechange_params,
    )

__all__ = [
    "chi",
    "config_reference",
    "exact_flow_k",
    "exact_flow_w",
    "g0_matrix",
    "g_xx",
    "lightlike_gram",
    "run_scenario",
    "scenario_names",
    "signature",
    "typechange_params",
]

__version__ = "1.0.0"

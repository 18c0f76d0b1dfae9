"""HTTP service around the core package.

Each endpoint has a plain handler function taking the pydantic request and
returning a JSON-ready dict.  The FastAPI app only routes to these handlers,
and the CLI calls the same handlers in-process (or POSTs to a running app).

Run with ``uvicorn xsep.service:app``.
"""

from __future__ import annotations

from typing import Any, Callable

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from .core import XState, is_state
from .dualnorm import dual_norm
from .io import encode_complex, state_to_json
from .schemas import (
    CheckRequest,
    DecomposeRequest,
    DualRequest,
    NormRequest,
    RegionRequest,
    SampleRequest,
    WitnessRequest,
    to_complex,
)
from .separability import (
    PQQQ_HEADER,
    THETA_RS_HEADER,
    acin_state,
    decide_xstate,
    decompose_acin,
    necessary_check_general,
    region_scan,
    sample_statistics,
)
from .witness import a_bracket, is_witness, pair
from .xnorm import x_norm


def handle_norm(req: NormRequest) -> dict:
    z = to_complex(req.c)
    out = x_norm(z, tol=req.tol).to_dict()
    out["c"] = encode_complex(z)
    return out


def handle_dual(req: DualRequest) -> dict:
    c = to_complex(req.c)
    out = dual_norm(c, tol=req.tol, starts=req.starts).to_dict(with_certificate=req.certificate)
    out["c"] = encode_complex(c)
    return out


def handle_check(req: CheckRequest) -> dict:
    if req.state is not None:
        rho = req.state.to_xstate()
        out = decide_xstate(rho, tol=req.tol, starts=req.starts).to_dict()
        out["input"] = "x-state"
        out["state"] = state_to_json(rho)
        return out
    out = necessary_check_general(req.dense.to_matrix(), tol=req.tol).to_dict()
    out["input"] = "dense"
    return out


def handle_witness(req: WitnessRequest) -> dict:
    w = req.witness.to_witness()
    a_lo, a_hi, method = a_bracket(w.s, w.t)
    b = x_norm(w.u)
    out: dict[str, Any] = {
        "is_witness": is_witness(w, tol=req.tol),
        "psd": is_state(XState(w.s, w.t, w.u)),
        "a": {"bracket": [a_lo, a_hi], "method": method},
        "b": b.to_dict(),
    }
    if req.state is not None:
        out["pair"] = pair(req.state.to_xstate(), w)
    return out


def handle_region(req: RegionRequest) -> dict:
    rows = region_scan(req.family, grid=req.grid, theta=req.theta, extent=req.extent, tol=req.tol)
    header = THETA_RS_HEADER if req.family == "theta-rs" else PQQQ_HEADER
    return {"family": req.family, "grid": req.grid, "header": list(header), "rows": [list(r) for r in rows]}


def handle_decompose(req: DecomposeRequest) -> dict:
    rho = acin_state(req.a, req.b, req.c)
    dec = decompose_acin(req.a, req.b, req.c, rtol=req.rtol)
    out = dec.to_dict()
    out["n_terms"] = len(dec.terms)
    out["reconstruction_error"] = dec.error(rho.to_dense())
    out["verdict"] = decide_xstate(rho).kind.value
    out["state"] = state_to_json(rho)
    return out


def handle_sample(req: SampleRequest) -> dict:
    return sample_statistics(req.n, seed=req.seed, tol=req.tol, starts=req.starts)


def handle_health() -> dict:
    return {"status": "ok", "version": __version__}


HANDLERS: dict[str, tuple[type, Callable[[Any], dict]]] = {
    "norm": (NormRequest, handle_norm),
    "dual": (DualRequest, handle_dual),
    "check": (CheckRequest, handle_check),
    "witness": (WitnessRequest, handle_witness),
    "region": (RegionRequest, handle_region),
    "decompose": (DecomposeRequest, handle_decompose),
    "sample": (SampleRequest, handle_sample),
}


def _clean(obj: Any) -> Any:
    """Replace non-finite floats (JSON has no inf) by strings."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not np.isfinite(obj):
        return str(float(obj))
    return obj


def dispatch(name: str, req: Any) -> dict:
    """Run the named handler on a validated request."""
    _, handler = HANDLERS[name]
    return _clean(handler(req))


app = FastAPI(title="xsep", version=__version__)


def _route(name: str):
    model, _ = HANDLERS[name]

    def endpoint(req):
        try:
            return dispatch(name, req)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    endpoint.__name__ = f"post_{name}"
    endpoint.__annotations__ = {"req": model, "return": dict}
    return endpoint


for _name in HANDLERS:
    app.post(f"/{_name}")(_route(_name))


@app.get("/health")
def health() -> dict:
    return handle_health()

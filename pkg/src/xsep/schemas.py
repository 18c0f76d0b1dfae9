"""Pydantic request models shared by the HTTP service and the CLI."""

from __future__ import annotations

import math
from typing import Annotated, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .core import XState
from .witness import Witness

Real = Annotated[float, Field(allow_inf_nan=False)]
Pair = tuple[Real, Real]
Entry = Union[Pair, Real]
CVec4 = Annotated[list[Entry], Field(min_length=4, max_length=4)]
Real4 = Annotated[list[Real], Field(min_length=4, max_length=4)]
Row8 = Annotated[list[Entry], Field(min_length=8, max_length=8)]
Tol = Annotated[float, Field(gt=0.0, le=1e-2)]
Starts = Annotated[int, Field(ge=1, le=4096)]


def to_complex(entries) -> np.ndarray:
    return np.array([complex(*e) if isinstance(e, (tuple, list)) else complex(e) for e in entries], dtype=complex)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class StateModel(_Strict):
    a: Real4
    b: Real4
    c: CVec4

    def to_xstate(self) -> XState:
        return XState(np.array(self.a), np.array(self.b), to_complex(self.c))


class DenseModel(_Strict):
    m: Annotated[list[Row8], Field(min_length=8, max_length=8)]

    def to_matrix(self) -> np.ndarray:
        return np.array([to_complex(row) for row in self.m])


class WitnessModel(_Strict):
    s: Real4
    t: Real4
    u: CVec4

    def to_witness(self) -> Witness:
        return Witness(np.array(self.s), np.array(self.t), to_complex(self.u))


class NormRequest(_Strict):
    c: CVec4
    tol: Tol = 1e-12


class DualRequest(_Strict):
    c: CVec4
    tol: Tol = 1e-9
    starts: Starts = 8
    certificate: bool = False


class CheckRequest(_Strict):
    state: Optional[StateModel] = None
    dense: Optional[DenseModel] = None
    tol: Tol = 1e-9
    starts: Starts = 8

    @model_validator(mode="after")
    def _one_input(self) -> "CheckRequest":
        if (self.state is None) == (self.dense is None):
            raise ValueError("give exactly one of state, dense")
        return self


class WitnessRequest(_Strict):
    witness: WitnessModel
    state: Optional[StateModel] = None
    tol: Annotated[float, Field(gt=0.0, le=1e-2)] = 1e-12


class RegionRequest(_Strict):
    family: Literal["theta-rs", "pqqq"] = "theta-rs"
    grid: Annotated[int, Field(ge=2, le=2000)] = 200
    theta: Real = math.pi
    extent: Optional[Annotated[float, Field(gt=0.0, allow_inf_nan=False)]] = None
    tol: Tol = 1e-9


class DecomposeRequest(_Strict):
    a: Annotated[float, Field(gt=0.0, allow_inf_nan=False)] = 1.0
    b: Annotated[float, Field(gt=0.0, allow_inf_nan=False)] = 1.0
    c: Annotated[float, Field(gt=0.0, allow_inf_nan=False)] = 1.0
    rtol: Annotated[float, Field(gt=0.0, le=1e-2)] = 1e-10


class SampleRequest(_Strict):
    n: Annotated[int, Field(ge=0, le=1_000_000)] = 100
    seed: Annotated[int, Field(ge=0)] = 0
    tol: Tol = 1e-9
    starts: Starts = 8

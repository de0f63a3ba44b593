"""Experiment configuration files for the command line tool.

Configs are JSON.  Rationals are written as integers or ``"p/q"`` strings;
floats are refused wherever an exact value is expected.  Unknown keys are
errors.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictInt,
    StrictStr,
    ValidationError,
    field_validator,
    model_validator,
)

from .errors import ConfigError
from .grid import GridDomain, GridFunction, Order, as_scalar

# strict so that 0.5 or 1.0 is rejected instead of coerced
Rational = Union[StrictInt, StrictStr]

OPERATORS = ("cfc_left", "cfr_left", "cfc_right", "cfr_right", "sum_left", "sum_right")
SUM_OPERATORS = ("sum_left", "sum_right")
SEED_ENV = "CFFRAC_SEED"


def _rational(v) -> Fraction:
    try:
        return as_scalar(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{v!r} is not an exact rational ({exc})") from None


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridSpec(_Strict):
    a: int = 0
    b: int = 8

    @model_validator(mode="after")
    def _nonempty(self):
        if self.b <= self.a:
            raise ValueError(f"grid [{self.a}, {self.b}] has no interior; need b > a")
        return self

    def domain(self) -> GridDomain:
        return GridDomain(self.a, self.b)


class FunctionSpec(_Strict):
    """A test function on the grid.

    ``const``: ``c``; ``linear``: ``c * t``; ``geometric``: ``c * r**(t - a)``;
    ``poly``: ``sum coeffs[i] t**i``; ``samples``: explicit ``values``.
    """

    name: str
    kind: Literal["const", "linear", "geometric", "poly", "samples"]
    c: Rational = 1
    r: Rational = 1
    coeffs: list[Rational] = Field(default_factory=list)
    values: list[Rational] = Field(default_factory=list)

    @field_validator("c", "r")
    @classmethod
    def _exact(cls, v):
        _rational(v)
        return v

    @field_validator("coeffs", "values")
    @classmethod
    def _exact_list(cls, vs):
        for v in vs:
            _rational(v)
        return vs

    def on(self, grid: GridSpec) -> GridFunction:
        dom = grid.domain()
        c, r = _rational(self.c), _rational(self.r)
        if self.kind == "const":
            return GridFunction.from_callable(dom, lambda t: c)
        if self.kind == "linear":
            return GridFunction.from_callable(dom, lambda t: c * t)
        if self.kind == "geometric":
            if r == 0:
                raise ConfigError(f"function {self.name!r}: geometric ratio must be nonzero")
            return GridFunction.from_callable(dom, lambda t: c * r ** (t - dom.a))
        if self.kind == "poly":
            cs = [_rational(x) for x in self.coeffs]
            return GridFunction.from_callable(dom, lambda t: sum((x * t ** i for i, x in enumerate(cs)), Fraction(0)))
        vals = [_rational(x) for x in self.values]
        if len(vals) != len(dom):
            raise ConfigError(f"function {self.name!r}: {len(vals)} samples for a grid of {len(dom)} points")
        return GridFunction(dom, tuple(vals))


class PotentialSpec(_Strict):
    kind: Literal["zero", "harmonic", "cos_well"] = "zero"
    k: Rational = 0


class BoundarySpec(_Strict):
    kind: Literal["fixed", "natural"] = "fixed"
    A: Rational = 0
    B: Rational = 1


class ELSpec(_Strict):
    potential: PotentialSpec = PotentialSpec()
    bc: BoundarySpec = BoundarySpec()
    initial: Literal["linear", "zeros"] = "linear"
    tol: float = 1e-10
    max_iter: int = Field(100, ge=1)


class ToleranceSpec(_Strict):
    quadrature: float = Field(1e-10, gt=0)
    continuous: float = Field(1e-8, gt=0)
    closed_form: float = Field(1e-10, gt=0)
    by_parts_c: float = Field(1e-6, gt=0)
    el_residual: float = Field(1e-8, gt=0)
    linear_limit: float = Field(1e-12, gt=0)
    dense_oracle: float = Field(1e-10, gt=0)
    gradient_rel: float = Field(1e-5, gt=0)


class ExperimentConfig(_Strict):
    grid: GridSpec = GridSpec()
    orders: list[Rational] = Field(default_factory=lambda: ["1/2"])
    functions: list[FunctionSpec] = Field(default_factory=list)
    operators: list[Literal["cfc_left", "cfr_left", "cfc_right", "cfr_right", "sum_left", "sum_right"]] = (
        Field(default_factory=lambda: list(OPERATORS)))
    z: list[Rational] = Field(default_factory=list)
    el: ELSpec = ELSpec()
    identities: Optional[list[str]] = None
    samples: int = Field(10, ge=1)
    max_span: int = Field(12, ge=3)
    seed: Optional[int] = None
    tolerances: ToleranceSpec = ToleranceSpec()
    output: Optional[str] = None

    @field_validator("orders")
    @classmethod
    def _orders(cls, vs):
        if not vs:
            raise ValueError("at least one order is required")
        for v in vs:
            Order(_rational(v))
        return vs

    @field_validator("z")
    @classmethod
    def _zs(cls, vs):
        for v in vs:
            _rational(v)
        return vs

    @field_validator("functions")
    @classmethod
    def _unique_names(cls, fs):
        names = [f.name for f in fs]
        if len(set(names)) != len(names):
            raise ValueError("function names must be unique")
        return fs

    def order_values(self) -> list:
        return [_rational(v) for v in self.orders]

    def z_values(self) -> list:
        return [_rational(v) for v in self.z]

    def resolved_seed(self) -> int:
        env = os.environ.get(SEED_ENV)
        if env is not None:
            try:
                return int(env)
            except ValueError:
                raise ConfigError(f"{SEED_ENV}={env!r} is not an integer") from None
        return 0 if self.seed is None else self.seed


def load_config(path: Optional[str | Path] = None) -> ExperimentConfig:
    """Read and validate a config; ``None`` loads the packaged default."""
    try:
        if path is None:
            text = resources.files("cffrac").joinpath("data/default_config.json").read_text()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    try:
        return ExperimentConfig.model_validate(raw)
    except (ValidationError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

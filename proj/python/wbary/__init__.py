"""Exact Wasserstein barycenters of discrete measures.

Instances, certificates and gadgets are plain dicts in the same JSON layout the
``wbary`` command line tool reads and writes. Rational numbers are written as
"p/q" strings in those dicts; results that are single numbers come back as
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import _wbary
from ._wbary import CapExceeded, GuardExceeded, InputError, ParseError, RoutingError

__all__ = [
    "CapExceeded",
    "GuardExceeded",
    "InputError",
    "ParseError",
    "RoutingError",
    "decide",
    "decode",
    "frac",
    "gen_random",
    "gen_square",
    "plan",
    "plot",
    "reduce",
    "solve",
    "tuple_cost",
    "verify",
]

DEFAULT_CAP: int = _wbary.DEFAULT_CAP
DEFAULT_SCALE: int = _wbary.DEFAULT_SCALE
MIN_SCALE: int = _wbary.MIN_SCALE


def frac(x: Any) -> Fraction:
    """Parse "p/q", an int or a Fraction. Floats are refused so nothing is rounded."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def _enc(obj: Any) -> str:
    def default(o: Any) -> Any:
        if isinstance(o, Fraction):
            return f"{o.numerator}/{o.denominator}" if o.denominator != 1 else str(o.numerator)
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return obj if isinstance(obj, str) else json.dumps(obj, default=default)


def _rat(x: Any) -> str:
    return _enc(frac(x)).strip('"')


def solve(instance: dict, method: str = "auto", cap: int = DEFAULT_CAP) -> dict:
    """Exact barycenter. ``method`` is auto, lp, 1d or 2m.

    Returns ``value`` (Fraction), ``support_size``, ``method`` and ``measure``,
    the optimal combination measure.
    """
    out = json.loads(_wbary.solve(_enc(instance), method, cap))
    out["value"] = Fraction(out["value"])
    return out


def verify(instance: dict, certificate: dict, N: int, phi: Any) -> dict:
    """Check a combination measure against sparsity ``N`` and cost bound ``phi``."""
    out = json.loads(_wbary.verify(_enc(instance), _enc(certificate), N, _rat(phi)))
    if out.get("cost") is not None:
        out["cost"] = Fraction(out["cost"])
    return out


def plan(instance: dict, support: dict) -> dict:
    """Optimal transport plan from a fixed candidate support to the inputs."""
    out = json.loads(_wbary.plan(_enc(instance), _enc(support)))
    out["value"] = Fraction(out["value"])
    return out


def reduce(p3dm: dict, scale: int = DEFAULT_SCALE) -> dict:
    """Compile a planar 3DM instance. Returns ``n``, ``gadget`` and ``instance``."""
    return json.loads(_wbary.reduce(_enc(p3dm), scale))


def decide(instance: dict, N: int, phi: Any, method: str = "scmp", cap: int = DEFAULT_CAP) -> dict:
    """Is there a combination measure with at most ``N`` atoms and cost at most ``phi``?"""
    return json.loads(_wbary.decide(_enc(instance), N, _rat(phi), method, cap))


def decode(gadget: dict, certificate: dict) -> dict:
    """Read a matching back off an accepted certificate on a gadget.

    ``ok`` is False with a ``reason`` when the certificate is not an alternating
    pattern or the pattern is not an exact cover.
    """
    return json.loads(_wbary.decode(_enc(gadget), _enc(certificate)))


def plot(data: dict, measure: Optional[dict] = None) -> str:
    """SVG of a 2-d instance or a gadget, optionally overlaid with a measure."""
    return _wbary.plot(_enc(data), None if measure is None else _enc(measure))


def gen_square(side: Any, d: Any = Fraction(1, 2)) -> dict:
    return json.loads(_wbary.gen_square(_rat(side), _rat(d)))


def gen_random(sizes: Sequence[int], dim: int, bound: int, seed: int) -> dict:
    return json.loads(_wbary.gen_random(list(sizes), dim, bound, seed))


def tuple_cost(instance: dict, tup: Sequence[int]) -> Fraction:
    """Weighted pairwise cost of one tuple of slots."""
    return Fraction(_wbary.tuple_cost(_enc(instance), list(tup)))

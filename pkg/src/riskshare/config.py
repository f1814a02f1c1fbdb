"""``key=value`` grammar shared by the CLI and scenario files.

Distortions: ``family=wang lambda=-0.6``, ``family=dual_power alpha=0.5``,
``family=kt gamma=0.71``, ``family=appendix_a alpha=0.5 k=10``,
``family=piecewise_linear knots=0:0,0.2:0.3,0.5:0.4,1:1``.

Laws: ``dist=uniform a=0 b=1``, ``dist=pareto shape=3 scale=2``,
``dist=lognormal mu=0 sigma=1``, ``dist=negated of=uniform a=0 b=1``,
``dist=finite atoms=0:1/2,1:1/2``, ``dist=point_mass c=3``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .distortion import DistortionFunction, make_distortion
from .errors import UnknownFamily, UsageError
from .riskmeasure import Distribution, make_distribution

DISTORTION_KEYS = {
    "power": ("alpha",),
    "dual_power": ("alpha",),
    "wang": ("lambda",),
    "kt": ("gamma",),
    "var_step": ("alpha",),
    "es_cap": ("beta",),
    "appendix_a": ("alpha", "k"),
    "piecewise_linear": ("knots",),
}

DISTRIBUTION_KEYS = {
    "uniform": ("a", "b"),
    "pareto": ("shape", "scale"),
    "lomax": ("shape", "scale"),
    "lognormal": ("mu", "sigma"),
    "bernoulli_scaled": ("p", "scale"),
    "point_mass": ("c",),
    "finite": ("atoms",),
}

_DIST_DEFAULTS = {"uniform": {"a": "0", "b": "1"}, "lognormal": {"mu": "0", "sigma": "1"}, "bernoulli_scaled": {"scale": "1"}}


def parse_kv(tokens: Iterable[str]) -> dict:
    """Ordered ``{key: raw value}``; duplicates and bare words are errors."""
    out: dict = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {tok!r}")
        if key in out:
            raise UsageError(f"duplicate key {key!r}")
        out[key] = value
    return out


def number(text: str, key: str = "value") -> float:
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{key}={text!r} is not a number") from exc


def number_list(text: str, key: str) -> list[float]:
    return [number(t, key) for t in text.split(",") if t.strip()]


def _pairs(text: str, key: str) -> list[tuple[str, str]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise UsageError(f"{key}: entry {item!r} is not of the form x:y")
        out.append((a.strip(), b.strip()))
    return out


def take_distortion(kv: dict) -> DistortionFunction:
    """Consume ``family`` and its parameter keys from ``kv``."""
    if "family" not in kv:
        raise UsageError("missing family=")
    family = kv.pop("family")
    if family not in DISTORTION_KEYS:
        raise UnknownFamily(f"unknown distortion family {family!r}")
    params = {}
    for key in DISTORTION_KEYS[family]:
        if key not in kv:
            raise UsageError(f"family={family} needs {key}=")
        raw = kv.pop(key)
        if key == "knots":
            params[key] = [(number(a, key), number(b, key)) for a, b in _pairs(raw, key)]
        elif key == "k":
            params[key] = int(number(raw, key))
        else:
            params[key] = number(raw, key)
    return make_distortion(family, params)


def take_distribution(kv: dict) -> Distribution:
    """Consume ``dist`` and its parameter keys from ``kv``."""
    if "dist" not in kv:
        raise UsageError("missing dist=")
    family = kv.pop("dist")
    if family == "negated":
        if "of" not in kv:
            raise UsageError("dist=negated needs of=<family>")
        kv["dist"] = kv.pop("of")
        return take_distribution(kv).negated()
    if family not in DISTRIBUTION_KEYS:
        raise UnknownFamily(f"unknown distribution family {family!r}")
    if family == "finite":
        if "atoms" not in kv:
            raise UsageError("dist=finite needs atoms=v:p,...")
        pairs = _pairs(kv.pop("atoms"), "atoms")
        try:
            probs = [Fraction(p) for _, p in pairs]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"atoms: bad probability ({exc})") from exc
        return Distribution.finite([number(v, "atoms") for v, _ in pairs], probs)
    params = {}
    for key in DISTRIBUTION_KEYS[family]:
        raw = kv.pop(key, _DIST_DEFAULTS.get(family, {}).get(key))
        if raw is None:
            raise UsageError(f"dist={family} needs {key}=")
        params[key] = raw if key == "p" else number(raw, key)
    if family == "bernoulli_scaled":
        try:
            params["p"] = Fraction(params["p"])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"p={params['p']!r} is not a probability") from exc
    return make_distribution(family, params)


def parse_distortion(tokens: Iterable[str]) -> DistortionFunction:
    kv = parse_kv(tokens)
    h = take_distortion(kv)
    reject_unknown(kv)
    return h


def parse_distribution(tokens: Iterable[str]) -> Distribution:
    kv = parse_kv(tokens)
    d = take_distribution(kv)
    reject_unknown(kv)
    return d


def reject_unknown(kv: dict) -> None:
    if kv:
        raise UsageError(f"unknown key(s): {', '.join(kv)}")


__all__ = [
    "DISTORTION_KEYS",
    "DISTRIBUTION_KEYS",
    "number",
    "number_list",
    "parse_distortion",
    "parse_distribution",
    "parse_kv",
    "reject_unknown",
    "take_distortion",
    "take_distribution",
]

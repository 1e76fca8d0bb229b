"""JSON experiment configuration: validation, normalisation and measure building.

Every level rejects unknown keys. :func:`load_config` returns a normalised
dict (defaults filled in) and :func:`dump_config` writes it back with sorted
keys, so load -> dump -> load is a fixed point.
"""

import json

from .measure import AnalyticFactor, GeneralizedJacobiMeasure, SingularPoint

__all__ = ["ConfigError", "SCHEMA_VERSION", "load_config", "parse_config", "dump_config", "build_measure"]

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


def _keys(obj, where, required=(), optional=()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ConfigError(f"{where}: missing key(s) {missing}")


def _num(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _int(v, where, lo=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}: expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ConfigError(f"{where}: must be >= {lo}")
    return v


def _measure(m):
    _keys(m, "measure", optional=("alpha", "beta", "singularities", "h"))
    out = {"alpha": _num(m.get("alpha", 0.0), "measure.alpha"), "beta": _num(m.get("beta", 0.0), "measure.beta")}
    sings = []
    for i, s in enumerate(m.get("singularities", [])):
        where = f"measure.singularities[{i}]"
        if "position" in s:
            _keys(s, where, required=("position", "lambda"))
            sings.append({"position": _num(s["position"], where), "lambda": _num(s["lambda"], where)})
        else:
            _keys(s, where, required=("p", "q", "lambda"))
            sings.append({"p": _int(s["p"], where), "q": _int(s["q"], where), "lambda": _num(s["lambda"], where)})
    out["singularities"] = sings
    h = m.get("h", "one")
    if isinstance(h, str):
        if h not in ("one", "exp"):
            raise ConfigError(f"measure.h: unknown builtin {h!r}; use 'one', 'exp' or a coefficient list")
    elif isinstance(h, list) and h:
        h = [_num(v, "measure.h") for v in h]
    else:
        raise ConfigError("measure.h: expected 'one', 'exp' or a non-empty list of Chebyshev coefficients")
    out["h"] = h
    try:
        build_measure(out)
    except ValueError as exc:
        raise ConfigError(f"measure: {exc}") from exc
    return out


def build_measure(m):
    """Measure object from a normalised ``measure`` block."""
    h = m.get("h", "one")
    if h == "one":
        factor = AnalyticFactor.one()
    elif h == "exp":
        factor = AnalyticFactor.exp()
    else:
        factor = AnalyticFactor.from_log_chebyshev(h)
    sings = []
    for s in m.get("singularities", []):
        if "position" in s:
            sings.append(SingularPoint(s["position"], s["lambda"]))
        else:
            sings.append(SingularPoint.from_angle(s["p"], s["q"], s["lambda"]))
    return GeneralizedJacobiMeasure(m.get("alpha", 0.0), m.get("beta", 0.0), sings, factor)


def _n_list(block, where):
    if "n_list" in block:
        if "n_range" in block or "stride" in block:
            raise ConfigError(f"{where}: give either n_list or n_range + stride")
        vals = block["n_list"]
        if not isinstance(vals, list) or not vals:
            raise ConfigError(f"{where}.n_list: expected a non-empty list")
        return [_int(v, f"{where}.n_list", 1) for v in vals]
    if "n_range" not in block:
        raise ConfigError(f"{where}: missing n_list or n_range")
    rng = block["n_range"]
    if not (isinstance(rng, list) and len(rng) == 2):
        raise ConfigError(f"{where}.n_range: expected [start, stop]")
    start, stop = (_int(v, f"{where}.n_range", 1) for v in rng)
    stride = _int(block.get("stride", 1), f"{where}.stride", 1)
    return list(range(start, stop + 1, stride))


def _recurrence(b):
    _keys(b, "recurrence", required=("N",), optional=("tol",))
    return {"N": _int(b["N"], "recurrence.N", 1), "tol": _num(b.get("tol", 1e-11), "recurrence.tol")}


def _zeros(b):
    _keys(b, "zeros", required=("n",), optional=("x0", "count"))
    out = {"n": _int(b["n"], "zeros.n", 1)}
    if "x0" in b:
        out["x0"] = _num(b["x0"], "zeros.x0")
        out["count"] = _int(b.get("count", 5), "zeros.count", 1)
    elif "count" in b:
        raise ConfigError("zeros.count needs zeros.x0")
    return out


def _spacing(b):
    _keys(b, "spacing", required=("nu",), optional=("k", "k_list", "n_list", "n_range", "stride", "tol"))
    ks = b.get("k_list", [b.get("k", 1)])
    if "k" in b and "k_list" in b:
        raise ConfigError("spacing: give either k or k_list")
    return {
        "nu": _int(b["nu"], "spacing.nu", 1),
        "k_list": [_int(k, "spacing.k_list") for k in ks],
        "n_list": _n_list(b, "spacing"),
        "tol": _num(b.get("tol", 0.02), "spacing.tol"),
    }


def _point(p, where, with_case):
    req = ("case", "a", "c", "d") if with_case else ("a", "c", "d")
    _keys(p, where, required=req)
    out = {k: _num(p[k], f"{where}.{k}") for k in ("a", "c", "d")}
    if with_case:
        if not isinstance(p["case"], str):
            raise ConfigError(f"{where}.case: expected a string")
        out["case"] = p["case"]
    return out


def _verify(b):
    _keys(b, "verify", optional=("k_max", "convexity", "comparison", "gap_limit", "simplicity",
                                 "probes", "bound", "sample_per_case"))
    out = {
        "k_max": _int(b.get("k_max", 100), "verify.k_max", 1),
        "probes": [_int(k, "verify.probes", 1) for k in b.get("probes", [10, 100, 1000])],
        "bound": _num(b.get("bound", 1e-4), "verify.bound"),
        "sample_per_case": _int(b.get("sample_per_case", 0), "verify.sample_per_case", 0),
    }
    for fam, with_case in (("convexity", True), ("comparison", True), ("gap_limit", False), ("simplicity", False)):
        pts = b.get(fam, [])
        if not isinstance(pts, list):
            raise ConfigError(f"verify.{fam}: expected a list")
        out[fam] = [_point(p, f"verify.{fam}[{i}]", with_case) for i, p in enumerate(pts)]
    return out


def _asym(b):
    _keys(b, "asym_compare", required=("region",),
          optional=("nu", "n_list", "n_range", "stride", "x_min", "x_max", "points", "delta"))
    region = b["region"]
    if region not in ("away", "endpoint", "near"):
        raise ConfigError("asym_compare.region: expected 'away', 'endpoint' or 'near'")
    out = {
        "region": region,
        "nu": _int(b.get("nu", 0), "asym_compare.nu", 0),
        "n_list": _n_list(b, "asym_compare"),
        "points": _int(b.get("points", 101), "asym_compare.points", 2),
        "delta": _num(b.get("delta", 0.1), "asym_compare.delta"),
    }
    for key in ("x_min", "x_max"):
        if key in b:
            out[key] = _num(b[key], f"asym_compare.{key}")
    return out


_BLOCKS = {
    "recurrence": _recurrence,
    "zeros": _zeros,
    "spacing": _spacing,
    "verify": _verify,
    "asym_compare": _asym,
}


def parse_config(raw):
    """Validate and normalise a decoded JSON document."""
    _keys(raw, "config", required=("schema_version",), optional=("measure", "output") + tuple(_BLOCKS))
    if raw["schema_version"] != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {raw['schema_version']!r}; expected {SCHEMA_VERSION}")
    out = {"schema_version": SCHEMA_VERSION}
    if "measure" in raw:
        out["measure"] = _measure(raw["measure"])
    if "output" in raw:
        if not isinstance(raw["output"], str):
            raise ConfigError("output: expected a path string")
        out["output"] = raw["output"]
    for key, fn in _BLOCKS.items():
        if key in raw:
            out[key] = fn(raw[key])
    return out


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return parse_config(raw)


def dump_config(cfg):
    return json.dumps(cfg, indent=2, sort_keys=True) + "\n"

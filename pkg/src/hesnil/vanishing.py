"""Experiment harness for windowed vanishing of iterated Laplacians.

For a Hessian-nilpotent P the quantities Delta^m P^{m+1} are conjectured to
vanish for all m beyond the explicit cutoff alpha_bound(n, d).  This module
generates seeded corpora, computes the vanishing window, cross-checks the
theorem-level consequences (which must hold, or the implementation is wrong),
records the conjecture-level outcomes verbatim, and serializes reports.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

from .gaussrat import GaussianRational
from .poly import Poly, format_poly
from .diffops import PolyVector, apply_D, grad, laplacian_iter, sigma_squared
from .nilpotency import is_hn
from .inversion import invert_closed, invert_hn, deg_t as pair_deg_t
from .generators import (
    IsotropicSet,
    _SCALE_POOL,
    pg_construction,
    ph_construction,
    sample_isotropic,
    ug_construction,
    w_construction,
    w_tilde_construction,
)


class TheoremCheckError(RuntimeError):
    """A consequence that is a theorem failed on a corpus member."""


class ConfigError(ValueError):
    """The experiment configuration is invalid."""


GENERATOR_KINDS = ("w", "wtilde", "ug", "pg", "ph")

# window width for the eventual-vanishing consistency check
CONSISTENCY_WINDOW = 3
# the second tested vanishing offset: Delta^m P^{m+k0}
CONSISTENCY_K0 = 2

# t_order defaults to bound + 2 only while that stays affordable
AFFORDABLE_T_ORDER = 10


def alpha_bound(n: int, d: int) -> Fraction:
    """Cutoff ((d-1)^(n-1) - (d-1)) / (d-2); degree 2 is handled separately."""
    if d < 3:
        raise ValueError("alpha_bound requires d >= 3")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return Fraction((d - 1) ** (n - 1) - (d - 1), d - 2)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    d: int
    generator_kind: str
    generator_params: dict
    trials: int
    seed: int
    t_order: int
    z_degree: int
    out: Optional[str] = None
    format: str = "json"
    parallelism: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Validate and normalize the JSON config schema.

        Required: n, d, generator{kind, params}, trials, seed.  t_order
        defaults to bound + 2 when that is affordable; z_degree defaults to
        the exact window budget t_order*(d-2) + 2.
        """
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        allowed = {"n", "d", "generator", "trials", "seed", "t_order",
                   "z_degree", "out", "format", "parallelism"}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key in ("n", "d", "generator", "trials", "seed"):
            if key not in data:
                raise ConfigError(f"missing config key: {key}")
        n, d = data["n"], data["d"]
        if not isinstance(n, int) or n < 2:
            raise ConfigError("n must be an integer >= 2")
        if not isinstance(d, int) or d < 2:
            raise ConfigError("d must be an integer >= 2")
        gen = data["generator"]
        if not isinstance(gen, dict) or "kind" not in gen:
            raise ConfigError("generator must be an object with a 'kind'")
        if set(gen) - {"kind", "params"}:
            raise ConfigError("generator accepts only 'kind' and 'params'")
        kind = gen["kind"]
        if kind not in GENERATOR_KINDS:
            raise ConfigError(f"unknown generator kind: {kind!r}")
        params = gen.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("generator params must be an object")
        trials = data["trials"]
        if not isinstance(trials, int) or trials < 0:
            raise ConfigError("trials must be a nonnegative integer")
        seed = data["seed"]
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        t_order = data.get("t_order")
        if t_order is None:
            bound = alpha_bound(n, d) if d >= 3 else Fraction(0)
            candidate = max(4, ceil(bound) + 2)
            if candidate > AFFORDABLE_T_ORDER:
                raise ConfigError(
                    "derived t_order exceeds the affordable default; set t_order explicitly")
            t_order = candidate
        if not isinstance(t_order, int) or t_order < 1:
            raise ConfigError("t_order must be a positive integer")
        exact_budget = t_order * (d - 2) + 2
        z_degree = data.get("z_degree", exact_budget)
        if not isinstance(z_degree, int) or z_degree < exact_budget:
            raise ConfigError(
                f"z_degree must be an integer >= {exact_budget} so windows stay exact")
        fmt = data.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError("format must be 'json' or 'csv'")
        out = data.get("out")
        if out is not None and not isinstance(out, str):
            raise ConfigError("out must be a path string")
        parallelism = data.get("parallelism", 1)
        if not isinstance(parallelism, int) or parallelism < 1:
            raise ConfigError("parallelism must be a positive integer")
        return cls(n=n, d=d, generator_kind=kind, generator_params=dict(params),
                   trials=trials, seed=seed, t_order=t_order, z_degree=z_degree,
                   out=out, format=fmt, parallelism=parallelism)


@dataclass(frozen=True)
class VanishingReport:
    """One trial's outcome; field order here is the serialization order."""

    provenance: dict
    hn_verdict: bool
    vanishing_flags: List[bool]
    deg_t: int
    bound: Optional[Fraction]
    bound_respected: bool
    isotropy_pass: Optional[Dict[str, Optional[bool]]]

    def to_json_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "hn_verdict": self.hn_verdict,
            "vanishing_flags": list(self.vanishing_flags),
            "deg_t": self.deg_t,
            "bound": None if self.bound is None else str(self.bound),
            "bound_respected": self.bound_respected,
            "isotropy_pass": self.isotropy_pass,
        }


def _trial_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def _random_exponent(rng: random.Random, arity: int, degree: int,
                     offset: int = 0) -> Tuple[int, ...]:
    """A random monomial exponent of the given total degree.

    offset restricts support to variables offset..arity-1.
    """
    e = [0] * arity
    for _ in range(degree):
        e[rng.randrange(offset, arity)] += 1
    return tuple(e)


def _random_homogeneous(rng: random.Random, arity: int, degree: int,
                        terms: int = 3, offset: int = 0) -> Poly:
    """A random nonzero homogeneous polynomial with small sparse support."""
    while True:
        acc: dict = {}
        for _ in range(terms):
            mono = _random_exponent(rng, arity, degree, offset)
            coeff = rng.choice(_SCALE_POOL)
            acc[mono] = acc.get(mono, GaussianRational(0)) + coeff
        p = Poly(arity, acc)
        if not p.is_zero():
            return p


def _format_vector(vec) -> str:
    return "(" + ", ".join(str(c) for c in vec) + ")"


def generate_trial(cfg: ExperimentConfig, index: int) -> Tuple[Poly, dict]:
    """Build one trial's polynomial plus its provenance record."""
    return build_member(cfg.n, cfg.d, cfg.generator_kind, cfg.generator_params,
                        _trial_seed(cfg.seed, index), index)


def build_member(n: int, d: int, kind: str, params: dict, trial_seed: int,
                 index: int = 0) -> Tuple[Poly, dict]:
    """Build a corpus member from an explicit per-member seed."""
    ts = trial_seed
    rng = random.Random(ts)
    provenance: dict = {"kind": kind, "trial": index, "trial_seed": ts,
                        "n": n, "d": d}

    if kind == "w":
        count = params.get("count", max(1, n // 2))
        if count > n // 2:
            raise ConfigError(f"w needs count <= n // 2, got count={count}, n={n}")
        family = sample_isotropic(n, count, ts, pairwise_orthogonal=True)
        provenance["vectors"] = [_format_vector(v) for v in family]
        return w_construction(family, d), provenance

    if kind == "wtilde":
        counts = params.get("counts", [1] * (d - 1))
        if not counts or any((not isinstance(c, int)) or c < 0 for c in counts):
            raise ConfigError("wtilde counts must be nonnegative integers")
        total = sum(counts)
        if total > n // 2 or total == 0:
            raise ConfigError(
                f"wtilde needs 1 <= sum(counts) <= n // 2, got {total} with n={n}")
        pool = sample_isotropic(n, total, ts, pairwise_orthogonal=True)
        sets, start = [], 0
        for c in counts:
            sets.append(IsotropicSet(n, pool.vectors[start:start + c],
                                     pairwise_orthogonal=True))
            start += c
        provenance["vectors"] = [[_format_vector(v) for v in s] for s in sets]
        return w_tilde_construction(sets, max_degree=d), provenance

    if kind == "ug":
        k = params.get("k", min(2, n // 2))
        if k < 1 or k > n // 2:
            raise ConfigError(f"ug needs 1 <= k <= n // 2, got k={k}, n={n}")
        betas = sample_isotropic(n, k, ts, pairwise_orthogonal=True)
        g = _random_homogeneous(rng, k, d)
        provenance["vectors"] = [_format_vector(v) for v in betas]
        provenance["inner"] = format_poly(g)
        return ug_construction(g, betas), provenance

    if kind == "pg":
        if n % 2:
            raise ConfigError("pg needs an even number of variables")
        half = n // 2
        g = _random_homogeneous(rng, half, d)
        provenance["inner"] = format_poly(g)
        return pg_construction(g), provenance

    if kind == "ph":
        if n % 2:
            raise ConfigError("ph needs an even number of variables")
        half = n // 2
        if half < 2:
            raise ConfigError("ph needs at least four variables")
        components = []
        for i in range(half):
            if i == half - 1:
                components.append(Poly.zero(half))
            elif i == 0:
                components.append(_random_homogeneous(rng, half, d - 1,
                                                      terms=2, offset=i + 1))
            elif rng.random() < 0.5:
                components.append(_random_homogeneous(rng, half, d - 1,
                                                      terms=2, offset=i + 1))
            else:
                components.append(Poly.zero(half))
        h = PolyVector(components)
        p, nilpotent = ph_construction(h)
        if not nilpotent:
            raise TheoremCheckError("triangular map produced a non-nilpotent Jacobian")
        provenance["map"] = [format_poly(c) for c in components]
        return p, provenance

    raise ConfigError(f"unknown generator kind: {kind!r}")


def isotropy_check(p: Poly, d: int, m_max: int) -> Dict[Tuple[str, int], bool]:
    """Apply sigma^2(D) and each (dP/dz_i)(D) to Delta^m P^{m+1}, m <= m_max.

    For a homogeneous Hessian-nilpotent P of degree >= 3 every one of these
    must be zero; a False entry falsifies the implementation, not the theory.
    """
    if d < 3:
        raise ValueError("isotropy_check requires degree >= 3")
    if p.is_homogeneous() != d:
        raise ValueError("P must be homogeneous of the stated degree")
    report = is_hn(p)
    if not report.is_hn:
        raise ValueError("P must be Hessian-nilpotent")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    ops = [("sigma^2", sigma_squared(p.arity))]
    for i, dp in enumerate(grad(p)):
        ops.append((f"partial_{i + 1}", dp))
    results: Dict[Tuple[str, int], bool] = {}
    power = Poly.one(p.arity)
    for m in range(0, m_max + 1):
        power = power * p
        target = laplacian_iter(power, m)
        for label, f in ops:
            results[(label, m)] = apply_D(f, target).is_zero()
    return results


def pd_qt_check(p: Poly, big_m: int) -> bool:
    """P(D) annihilates every inversion coefficient Q_[m], m <= M.

    Degree >= 3: also spot-checks (Delta^l P^k)(D) Delta^m P^{m+1} = 0 for
    (k, l) in {(1,0), (2,0), (2,1)} and m <= 2.  Degree 2 runs the variant
    with operators from {P, sigma^2} instead.
    """
    if big_m < 1:
        raise ValueError("M must be at least 1")
    d = p.is_homogeneous()
    if d is None or d < 2:
        raise ValueError("P must be homogeneous of degree >= 2")
    report = is_hn(p)
    if not report.is_hn:
        raise ValueError("P must be Hessian-nilpotent")

    if d == 2:
        power = Poly.one(p.arity)
        sig = sigma_squared(p.arity)
        for m in range(0, big_m + 1):
            power = power * p
            target = laplacian_iter(power, m)
            if not apply_D(p, target).is_zero():
                return False
            if not apply_D(sig, target).is_zero():
                return False
        return True

    pair = invert_closed(p, big_m)
    for m in range(1, big_m + 1):
        if not apply_D(p, pair.q.coeff(m - 1)).is_zero():
            return False
    p2 = p * p
    spot_ops = [p, p2, laplacian_iter(p2, 1)]
    power = Poly.one(p.arity)
    for m in range(0, 3):
        power = power * p
        target = laplacian_iter(power, m)
        for f in spot_ops:
            if not apply_D(f, target).is_zero():
                return False
    return True


def _vanishing_flags(p: Poly, big_m: int, extra: int) -> List[List[bool]]:
    """flags[j][m-1] tells whether Delta^m P^{m+1+j} = 0, for j = 0..extra."""
    powers = [Poly.one(p.arity)]
    for _ in range(big_m + 1 + extra):
        powers.append(powers[-1] * p)
    out = []
    for j in range(extra + 1):
        out.append([laplacian_iter(powers[m + 1 + j], m).is_zero()
                    for m in range(1, big_m + 1)])
    return out


def run_trial(cfg: ExperimentConfig, index: int) -> Tuple[VanishingReport, List[str]]:
    """One corpus member: report plus any theorem-level failure messages."""
    p, provenance = generate_trial(cfg, index)
    big_m = cfg.t_order
    failures: List[str] = []
    tag = f"trial {index} ({cfg.generator_kind})"

    report = is_hn(p)
    hn = report.is_hn
    if not hn:
        failures.append(f"{tag}: generator produced a non-HN polynomial")

    flag_rows = _vanishing_flags(p, big_m, CONSISTENCY_K0 - 1)
    flags = flag_rows[0]
    offset_flags = flag_rows[CONSISTENCY_K0 - 1]

    nonzero = [m for m in range(1, big_m + 1) if not flags[m - 1]]
    degree_t = max(nonzero) if nonzero else 0

    if hn:
        # iterated Laplacians of powers must vanish up to the arity
        for m in range(1, min(big_m, p.arity) + 1):
            power = p ** m
            if not laplacian_iter(power, m).is_zero():
                failures.append(f"{tag}: Delta^{m} P^{m} != 0 on an HN member")

        # eventual-vanishing consistency: a clean trailing window at offset
        # k0 forces a clean shifted window at offset 1
        window = range(max(1, big_m - CONSISTENCY_WINDOW), big_m + 1)
        if all(offset_flags[m - 1] for m in window):
            for m in window:
                shifted = m + CONSISTENCY_K0 - 1
                if shifted <= big_m and not flags[shifted - 1]:
                    failures.append(
                        f"{tag}: offset-{CONSISTENCY_K0} window vanishes but "
                        f"Delta^{shifted} P^{shifted + 1} != 0")

        # the recurrence-based inverter must see the same top degree in t
        pair = invert_hn(p, big_m + 1)
        inv_deg = pair_deg_t(pair)
        if inv_deg != degree_t:
            failures.append(
                f"{tag}: inversion deg_t {inv_deg} != window deg_t {degree_t}")

    d_actual = p.is_homogeneous()
    isotropy: Optional[Dict[str, Optional[bool]]] = None
    if hn and d_actual is not None and d_actual >= 2:
        if d_actual >= 3:
            ideal = isotropy_check(p, d_actual, min(big_m, 3))
            ideal_ok = all(ideal.values())
            pd_ok = pd_qt_check(p, min(big_m, 4))
            isotropy = {"derivative_ideal": ideal_ok, "pd_on_q": pd_ok}
            if not ideal_ok:
                failures.append(f"{tag}: derivative-ideal annihilation failed")
            if not pd_ok:
                failures.append(f"{tag}: P(D) annihilation of Q coefficients failed")
        else:
            pd_ok = pd_qt_check(p, min(big_m, 4))
            isotropy = {"derivative_ideal": None, "pd_on_q": pd_ok}
            if not pd_ok:
                failures.append(f"{tag}: degree-2 annihilation variant failed")

    if cfg.d >= 3:
        bound: Optional[Fraction] = alpha_bound(cfg.n, cfg.d)
        respected = all(flags[m - 1] for m in range(1, big_m + 1) if m > bound)
    else:
        bound = None
        respected = all(flags)

    return (
        VanishingReport(
            provenance=provenance,
            hn_verdict=hn,
            vanishing_flags=flags,
            deg_t=degree_t,
            bound=bound,
            bound_respected=respected,
            isotropy_pass=isotropy,
        ),
        failures,
    )


def _run_trial_star(args: Tuple[ExperimentConfig, int]):
    return run_trial(*args)


def run_vanishing_full(cfg: ExperimentConfig) -> Tuple[List[VanishingReport], List[str]]:
    """All trials in seed order, plus collected theorem-level failures."""
    jobs = [(cfg, i) for i in range(cfg.trials)]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            outcomes = list(pool.map(_run_trial_star, jobs))
    else:
        outcomes = [run_trial(cfg, i) for i in range(cfg.trials)]
    reports = [r for r, _ in outcomes]
    failures = [msg for _, fails in outcomes for msg in fails]
    return reports, failures


def run_vanishing(cfg: ExperimentConfig) -> List[VanishingReport]:
    reports, _ = run_vanishing_full(cfg)
    return reports


_CSV_FIXED_PRE = ["provenance", "hn_verdict"]
_CSV_FIXED_POST = ["deg_t", "bound", "bound_respected",
                   "isotropy_derivative_ideal", "isotropy_pd_on_q"]


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_report(reports: Sequence[VanishingReport], fmt: str) -> str:
    """Serialize reports with stable field order; fmt is 'json' or 'csv'."""
    if fmt == "json":
        payload = [r.to_json_dict() for r in reports]
        return json.dumps(payload, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError("format must be 'json' or 'csv'")
    big_m = len(reports[0].vanishing_flags) if reports else 0
    header = _CSV_FIXED_PRE + [f"m{j}" for j in range(1, big_m + 1)] + _CSV_FIXED_POST
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in reports:
        iso = r.isotropy_pass or {}
        row = [json.dumps(r.provenance, sort_keys=True), _csv_cell(r.hn_verdict)]
        row.extend(_csv_cell(flag) for flag in r.vanishing_flags)
        row.extend([
            _csv_cell(r.deg_t),
            _csv_cell(None if r.bound is None else str(r.bound)),
            _csv_cell(r.bound_respected),
            _csv_cell(iso.get("derivative_ideal")),
            _csv_cell(iso.get("pd_on_q")),
        ])
        writer.writerow(row)
    return buf.getvalue()


def emit_report(reports: Sequence[VanishingReport], fmt: str, path: str) -> str:
    """Write the serialized reports to path and return the text."""
    text = render_report(reports, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return text


def load_report_json(path: str) -> List[VanishingReport]:
    """Read back a JSON report file into VanishingReport objects."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    out = []
    for item in payload:
        out.append(VanishingReport(
            provenance=item["provenance"],
            hn_verdict=item["hn_verdict"],
            vanishing_flags=list(item["vanishing_flags"]),
            deg_t=item["deg_t"],
            bound=None if item["bound"] is None else Fraction(item["bound"]),
            bound_respected=item["bound_respected"],
            isotropy_pass=item["isotropy_pass"],
        ))
    return out

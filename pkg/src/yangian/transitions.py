"""Transition operators acting on qubit-pair and quark-pair states."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import su2_yangian, su3_yangian
from .entanglement import PureState, binary_entropy_base3, concurrence, mean_entropy
from .errors import EmptyRange, NotNormalized, ValidationError, WrongShape
from .generators import GeneratorSet, YangianParams

ANNIHILATION_TOL = 1e-12

SL2_OPERATORS = {"P1": "J+", "P2": "J-", "P3": "J3", "P4": "Y+", "P5": "Y-", "P6": "Y3"}

SU3_DISPLAY = {
    "I+": "I⁺", "I-": "I⁻", "U+": "U⁺", "U-": "U⁻", "V+": "V⁺", "V-": "V⁻", "I3": "I³", "I8": "I⁸",
}  # fmt: skip
_FAMILY_MARK = {"tilde": "̃", "reduced": "̄"}
_FAMILY_WORD = {"tilde": "tilde", "reduced": "bar"}


def su3_label(family: str, key: str) -> str:
    """CLI label such as 'Itilde+' or 'Ibar8'."""
    return f"{key[0]}{_FAMILY_WORD[family]}{key[1:]}"


def su3_display(family: str, key: str) -> str:
    text = SU3_DISPLAY[key]
    return text[0] + _FAMILY_MARK[family] + text[1:]


@dataclass
class TransitionOutcome:
    operator_label: str
    initial_state: PureState
    raw_state: PureState
    raw_norm: float
    final_state: PureState | None
    entanglement_before: float
    entanglement_after: float | None
    channels: list[str] = field(default_factory=list)
    components: dict = field(default_factory=dict)

    @property
    def annihilated(self) -> bool:
        return self.final_state is None


def entanglement_degree(s: PureState) -> float:
    if s.party_dims == (2, 2):
        return concurrence(s)
    if s.party_dims == (3, 3):
        return mean_entropy(s)
    raise WrongShape(f"no entanglement measure for party dimensions {s.party_dims}")


def qubit_initial_state(alpha: complex, beta: complex) -> PureState:
    """(alpha(|00> + |11>) + beta(|01> + |10>)) / sqrt(2)."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > 1e-10:
        raise NotNormalized(f"|alpha|^2 + |beta|^2 = {abs(alpha) ** 2 + abs(beta) ** 2:.12g}, expected 1")
    return PureState((2, 2), np.array([alpha, beta, beta, alpha], dtype=complex) / math.sqrt(2))


def sl2_operator_catalog(p: YangianParams, reduced: bool = True) -> GeneratorSet:
    """P1..P3 = J+, J-, J3 and, when ``reduced``, P4..P6 = Y+, Y-, Y3."""
    j = su2_yangian.yangian_j(p)
    members = {"P1": j["J+"], "P2": j["J-"], "P3": j["J3"]}
    if reduced:
        y = su2_yangian.reduced_generators_su2(p)
        members.update({"P4": y["Y+"], "P5": y["Y-"], "P6": y["Y3"]})
    return GeneratorSet("su2-catalog", 4, members)


def su3_operator_catalog(p: YangianParams, family: str) -> GeneratorSet:
    if family == "tilde":
        ops = su3_yangian.tilde_operators(p)
        algebra = "su3-tilde"
    elif family == "reduced":
        ops = su3_yangian.reduced_generators_su3(p)
        algebra = "su3-reduced"
    else:
        raise ValidationError(f"unknown operator family {family!r}")
    return GeneratorSet(algebra, 9, {key: ops[key] for key in su3_yangian.TILDE_LABELS})


def apply_transition(op, s: PureState, label: str = "") -> TransitionOutcome:
    """Apply op, renormalize, and measure entanglement before and after."""
    from .mesons import decompose

    op = np.asarray(op, dtype=complex)
    if op.shape != (s.amplitudes.size, s.amplitudes.size):
        raise WrongShape(f"operator of shape {op.shape} cannot act on {s.amplitudes.size} amplitudes")
    before = entanglement_degree(s)
    raw = s.apply(op)
    norm = raw.norm
    if norm <= ANNIHILATION_TOL:
        return TransitionOutcome(label, s, raw, norm, None, before, None)
    final = raw.renormalized()
    outcome = TransitionOutcome(label, s, raw, norm, final, before, entanglement_degree(final))
    if s.party_dims == (3, 3):
        dec = decompose(final)
        outcome.components = dec.components
        outcome.channels = dec.channel_labels()
    return outcome


@dataclass
class SweepResult:
    lam: float
    points: list[tuple[float, float]]
    omitted: list[float]
    peaks: list[dict]

    note = (
        "c1 follows the normalization (mu - lambda/2)^2 + (nu + lambda/2)^2 = 1 only; "
        "imposing mu*nu = -lambda^2/4 as well leaves isolated points, not a curve"
    )


def c1_value(mu: float, lam: float) -> float:
    return binary_entropy_base3((mu - lam / 2) ** 2)


def sweep_c1(lam: float, mu_min: float, mu_max: float, steps: int) -> SweepResult:
    """C1 against mu on a uniform grid, plus refined local maxima."""
    if steps < 2:
        raise EmptyRange("steps must be at least 2")
    if not mu_max > mu_min:
        raise EmptyRange(f"empty mu range [{mu_min}, {mu_max}]")
    points, omitted = [], []
    for mu in np.linspace(mu_min, mu_max, steps):
        mu = float(mu)
        if (mu - lam / 2) ** 2 <= 1.0:
            points.append((mu, c1_value(mu, lam)))
        else:
            omitted.append(mu)
    if not points:
        raise EmptyRange("no mu in range satisfies (mu - lambda/2)^2 <= 1")

    from scipy.optimize import minimize_scalar

    peaks = []
    values = [c for _, c in points]
    for k in range(1, len(points) - 1):
        if values[k] >= values[k - 1] and values[k] > values[k + 1]:
            lo, hi = points[k - 1][0], points[k + 1][0]
            res = minimize_scalar(
                lambda m: -c1_value(m, lam), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
            )
            peaks.append({"grid_mu": points[k][0], "grid_c1": values[k], "mu": float(res.x), "c1": -float(res.fun)})
    return SweepResult(lam, points, omitted, peaks)


def normalized_alpha(p: YangianParams) -> tuple[float, float] | None:
    """(alpha, beta) making J+|phi> carry total weight 2, or None if impossible.

    Solves |x alpha|^2 + |y alpha|^2 + |beta|^2 = 2 with |alpha|^2 + |beta|^2 = 1,
    where x, y are the two J+ coefficients.
    """
    x = (p.nu + p.lam / 2) / p.total
    y = (p.mu - p.lam / 2) / p.total
    excess = x * x + y * y - 1
    if excess < 1:
        return None
    alpha = math.sqrt(1 / excess)
    return alpha, math.sqrt(1 - alpha * alpha)


def reference_c1(p: YangianParams, alpha: complex) -> float:
    return abs((p.mu - p.lam / 2) * (p.nu + p.lam / 2) / (2 * p.total**2) * alpha**2)


def c1_factor_report(param_sets) -> dict:
    """Ratio of the measured J+- concurrence to the reference closed form."""
    rows = []
    for p in param_sets:
        ab = normalized_alpha(p)
        if ab is None:
            continue
        state = qubit_initial_state(*ab)
        cat = sl2_operator_catalog(p, reduced=False)
        for label in ("P1", "P2"):
            measured = apply_transition(cat[label], state, label).entanglement_after
            rows.append(
                {"mu": p.mu, "nu": p.nu, "lambda": p.lam, "alpha": ab[0], "beta": ab[1], "operator": label,
                 "measured": measured, "reference": reference_c1(p, ab[0]), "factor": measured / reference_c1(p, ab[0])}
            )  # fmt: skip
    factors = np.array([r["factor"] for r in rows])
    return {
        "rows": rows,
        "factor_mean": float(factors.mean()) if rows else math.nan,
        "factor_variance": float(factors.var()) if rows else math.nan,
    }

"""Two-site realization of Y(sl(2)) and its reduction by the tau similarity.

Qubit convention: |0> is spin-down, so S3|0> = -1/2 |0> and S+|0> = |1>.
Two-qubit basis is row-major: |00>, |01>, |10>, |11>.
"""
from __future__ import annotations

import numpy as np

from . import linalg
from .errors import SingularMatrix
from .generators import RELATION_TOL, GeneratorSet, RelationReport, YangianParams

I2 = linalg.identity(2)

# one-qubit ladder and weight matrices in the |0> = down basis
_RAISE = np.array([[0, 0], [1, 0]], dtype=complex)
_LOWER = _RAISE.T.copy()
_WEIGHT = np.diag([-0.5, 0.5]).astype(complex)

EPSILON = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPSILON[_a, _b, _c] = 1.0
    EPSILON[_b, _a, _c] = -1.0

BLOCKS_2x2 = (slice(0, 2), slice(2, 4))


def spin_half_ops() -> GeneratorSet:
    s1 = (_RAISE + _LOWER) / 2
    s2 = (_RAISE - _LOWER) / 2j
    return GeneratorSet(
        "spin-half", 2, {"S1": s1, "S2": s2, "S3": _WEIGHT.copy(), "S+": _RAISE.copy(), "S-": _LOWER.copy()}
    )


def _site_ops():
    s = spin_half_ops()
    first = [linalg.kron(s[f"S{a}"], I2) for a in (1, 2, 3)]
    second = [linalg.kron(I2, s[f"S{a}"]) for a in (1, 2, 3)]
    return first, second


def _with_ladders(prefix: str, comps) -> dict:
    out = {f"{prefix}{a + 1}": comps[a] for a in range(3)}
    out[f"{prefix}+"] = comps[0] + 1j * comps[1]
    out[f"{prefix}-"] = comps[0] - 1j * comps[1]
    return out


def total_spin() -> GeneratorSet:
    first, second = _site_ops()
    return GeneratorSet("su2-total", 4, _with_ladders("I", [first[a] + second[a] for a in range(3)]))


def yangian_j(p: YangianParams) -> GeneratorSet:
    """J = (mu S1 + nu S2 + i lambda S1 x S2) / (mu + nu), with J+- = J1 +- i J2."""
    p.require_nondegenerate()
    first, second = _site_ops()
    comps = []
    for a in range(3):
        cross = sum(
            EPSILON[a, b, c] * (first[b] @ second[c]) for b in range(3) for c in range(3) if EPSILON[a, b, c]
        )
        comps.append((p.mu * first[a] + p.nu * second[a] + 1j * p.lam * cross) / p.total)
    return GeneratorSet("su2-general", 4, _with_ladders("J", comps))


def tau_matrix(p: YangianParams) -> np.ndarray:
    det = p.nu**2 - p.lam**2 / 4
    if abs(det) <= linalg.SINGULAR_TOL:
        raise SingularMatrix(f"tau is singular: nu^2 - lambda^2/4 = {det:.3e}")
    tau = linalg.identity(4)
    tau[1:3, 1:3] = [[p.nu, -p.lam / 2], [-p.lam / 2, p.nu]]
    return tau


def off_block_norm(m: np.ndarray, block: int) -> float:
    """Frobenius norm of everything outside the diagonal block x block tiles."""
    mask = np.ones(m.shape, dtype=bool)
    for start in range(0, m.shape[0], block):
        mask[start : start + block, start : start + block] = False
    return float(np.linalg.norm(m[mask]))


def diagonal_blocks(m: np.ndarray, block: int) -> list[np.ndarray]:
    return [m[s : s + block, s : s + block] for s in range(0, m.shape[0], block)]


def block_scalar(block: np.ndarray, template: np.ndarray) -> tuple[complex, float]:
    """Best c with block ~ c * template, and the Frobenius misfit."""
    c = complex(np.vdot(template, block) / np.vdot(template, template))
    return c, float(np.linalg.norm(block - c * template))


def _conjugated(p: YangianParams) -> dict:
    tau = tau_matrix(p)
    tau_inv = linalg.inverse(tau)
    j = yangian_j(p)
    return {f"Y{k}": tau_inv @ j[f"J{k}"] @ tau for k in ("+", "-", "3")}


def reduced_generators_su2(p: YangianParams) -> GeneratorSet:
    """Y^a = tau^-1 J^a tau for a in {+, -, 3}; block diagonal under the constraint."""
    p.require_constraint()
    return GeneratorSet("su2-reduced", 4, _conjugated(p))


def _compare_pattern(measured, reference, tol=1e-10) -> dict:
    def fit(target):
        ratios = [m / t for m, t in zip(measured, target)]
        factor = ratios[0]
        ok = all(abs(r - factor) <= tol * max(1.0, abs(factor)) for r in ratios)
        return ok, factor

    same, factor = fit(reference)
    swapped, swapped_factor = fit(list(reversed(reference)))
    return {
        "measured": [complex(m) for m in measured],
        "reference": [complex(t) for t in reference],
        "matches_up_to_global_factor": same,
        "global_factor": complex(factor) if same else None,
        "matches_with_blocks_reversed": swapped,
        "reversed_global_factor": complex(swapped_factor) if swapped else None,
    }


def reduction_scalars_su2(p: YangianParams) -> dict:
    """Block scalars of the reduced generators against the one-qubit operators.

    The reference form is (xi, 1/xi) for Y+, (1/xi, xi) for Y- and (1, 1) for Y3,
    each up to one overall factor.
    """
    reduced = reduced_generators_su2(p)
    xi = p.xi
    templates = {"Y+": _RAISE, "Y-": _LOWER, "Y3": _WEIGHT}
    reference = {"Y+": (xi, 1 / xi), "Y-": (1 / xi, xi), "Y3": (1.0, 1.0)}
    out = {}
    for label, template in templates.items():
        fits = [block_scalar(b, template) for b in diagonal_blocks(reduced[label], 2)]
        entry = _compare_pattern([c for c, _ in fits], reference[label])
        entry["template_misfit"] = max(r for _, r in fits)
        entry["off_block_norm"] = off_block_norm(reduced[label], 2)
        out[label] = entry
    return out


def serre_residual(p: YangianParams, h: float) -> float:
    """||[J+-,[J3,J+-]] - h^2/4 I+-(J+- I3 - I+- J3)||, summed over both signs.

    Diagnostic only: the relation is evaluated exactly in its reference form.
    """
    j = yangian_j(p)
    i = total_spin()
    total = 0.0
    for s in ("+", "-"):
        lhs = linalg.commutator(j[f"J{s}"], linalg.commutator(j["J3"], j[f"J{s}"]))
        rhs = (h * h / 4) * i[f"I{s}"] @ (j[f"J{s}"] @ i["I3"] - i[f"I{s}"] @ j["J3"])
        total += linalg.frobenius(lhs - rhs) ** 2
    return float(np.sqrt(total))


def serre_scan(p: YangianParams, hs=None) -> dict:
    if hs is None:
        hs = (0.0, p.lam, 2 * p.lam)
    residuals = {float(h): serre_residual(p, h) for h in hs}
    best = min(residuals, key=residuals.get)
    return {"residuals": residuals, "best_h": best, "best_residual": residuals[best]}


def _epsilon_rows(report: RelationReport, left, right, target, name: str) -> None:
    for a in range(3):
        for b in range(3):
            expected = sum(1j * EPSILON[a, b, c] * target[c] for c in range(3))
            res = linalg.frobenius(linalg.commutator(left[a], right[b]) - expected)
            report.add(f"[{name[0]}{a + 1},{name[1]}{b + 1}]-i*eps*{name[2]}", res)


def verify_su2_relations(p: YangianParams, tol: float = RELATION_TOL) -> RelationReport:
    """Residuals of every Y(sl(2)) relation at the given parameters.

    The J-closure, Casimir and block-structure rows only hold under the
    constraint; elsewhere they are reported, never raised.
    """
    p.require_nondegenerate()
    i = total_spin()
    j = yangian_j(p)
    ic = [i[f"I{a}"] for a in (1, 2, 3)]
    jc = [j[f"J{a}"] for a in (1, 2, 3)]
    report = RelationReport("su2", p)
    _epsilon_rows(report, ic, ic, ic, "III")
    _epsilon_rows(report, ic, jc, jc, "IJJ")
    casimir = sum(m @ m for m in jc)
    report.add("sum J_a^2 - 3/4", linalg.frobenius(casimir - 0.75 * linalg.identity(4)), tol)
    _epsilon_rows(report, jc, jc, jc, "JJJ")

    conjugated = _conjugated(p)
    for label, m in conjugated.items():
        report.add(f"offblock(tau^-1 J{label[1:]} tau)", off_block_norm(m, 2), tol)
    for r in report.relations:
        r.tol = tol

    report.diagnostics["serre"] = serre_scan(p)
    if p.constraint_ok():
        report.diagnostics["block_scalars"] = reduction_scalars_su2(p)
    return report

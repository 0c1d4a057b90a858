"""Quark-pair basis, pseudoscalar meson states and decay-channel labels."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import NORM_TOL, PureState
from .errors import NotNormalized, WrongShape
from .generators import YangianParams

BAR = "̄"
QUARK_PAIRS = tuple(f"{q}{a}{BAR}" for q in "uds" for a in "uds")
INDEX = {label: k for k, label in enumerate(QUARK_PAIRS)}

PI_PLUS, PI_MINUS, PI_ZERO = "π⁺", "π⁻", "π⁰"
K_ZERO, K_ZERO_BAR, K_PLUS, K_MINUS = "K⁰", f"K{BAR}⁰", "K⁺", "K⁻"
ETA_OCTET, ETA_SINGLET = "η⁰", "η⁰′"

# order in which channel labels are concatenated
CHANNEL_ORDER = (PI_PLUS, PI_MINUS, K_ZERO, K_ZERO_BAR, K_PLUS, K_MINUS, ETA_OCTET, ETA_SINGLET, PI_ZERO)
CHANNEL_TOL = 1e-9


def _vector(**weights) -> np.ndarray:
    v = np.zeros(9, dtype=complex)
    for key, w in weights.items():
        v[INDEX[f"{key[0]}{key[1]}{BAR}"]] = w
    return v


def _meson_vectors() -> dict[str, np.ndarray]:
    r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    return {
        PI_PLUS: _vector(ud=-1),
        PI_MINUS: _vector(du=1),
        K_ZERO: _vector(ds=1),
        K_ZERO_BAR: _vector(sd=1),
        K_PLUS: _vector(us=1),
        K_MINUS: _vector(su=1),
        ETA_OCTET: _vector(uu=-1 / r6, dd=-1 / r6, ss=2 / r6),
        ETA_SINGLET: _vector(uu=1 / r3, dd=1 / r3, ss=1 / r3),
        PI_ZERO: _vector(uu=1 / r2, dd=-1 / r2),
    }


def meson_dictionary() -> dict[str, PureState]:
    return {label: PureState((3, 3), v) for label, v in _meson_vectors().items()}


def construct_eta(alpha1: float, alpha2: float) -> PureState:
    """alpha1 |eta0'> + alpha2 |eta0>."""
    if abs(alpha1**2 + alpha2**2 - 1) > NORM_TOL:
        raise NotNormalized(f"alpha1^2 + alpha2^2 = {alpha1**2 + alpha2**2:.12g}, expected 1")
    m = _meson_vectors()
    return PureState((3, 3), alpha1 * m[ETA_SINGLET] + alpha2 * m[ETA_OCTET])


@dataclass(frozen=True)
class MesonDecomposition:
    components: dict
    residual_norm: float

    def channel_labels(self, tol: float = CHANNEL_TOL) -> list[str]:
        return [label for label in CHANNEL_ORDER if abs(self.components[label]) > tol]

    def channel(self, tol: float = CHANNEL_TOL) -> str:
        return "".join(self.channel_labels(tol))


def decompose(s: PureState) -> MesonDecomposition:
    if s.party_dims != (3, 3):
        raise WrongShape(f"meson decomposition needs party dimensions (3, 3), got {s.party_dims}")
    vectors = _meson_vectors()
    comps = {label: complex(np.vdot(v, s.amplitudes)) for label, v in vectors.items()}
    rebuilt = sum(c * vectors[label] for label, c in comps.items())
    return MesonDecomposition(comps, float(np.linalg.norm(s.amplitudes - rebuilt)))


def reference_eta8_bar(alpha1: float, alpha2: float) -> dict:
    """The reference I-bar-8 output and its reference meson expansion, unnormalized."""
    r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    a = alpha1 / r3 - alpha2 / r6
    b = alpha1 / r3 + 2 * alpha2 / r6
    state = _vector(uu=a / 3, dd=-a / 2, ss=-2 * b / 3)
    comps = {
        ETA_SINGLET: -5 * alpha1 / 18 - 7 * alpha2 / (18 * r2),
        ETA_OCTET: -(7 * alpha1 / (18 * r2) + 17 * alpha2 / 36),
        PI_ZERO: 5 * alpha1 / (6 * r6) - 5 * alpha2 / (12 * r3),
    }
    return {"state": state, "components": comps}


def special_mixing(alpha1: float, alpha2: float, tol: float = 1e-12) -> bool:
    """True when eta has no weight left on ss-bar after I~8, i.e. alpha1 = -sqrt(2) alpha2."""
    return abs(alpha1 / math.sqrt(3) + 2 * alpha2 / math.sqrt(6)) <= tol


@dataclass
class DecayRow:
    family: str
    operator: str
    display: str
    final_state: PureState | None
    entanglement: float | None
    channel: str
    components: dict


@dataclass
class DecayReport:
    params: YangianParams
    alpha1: float
    alpha2: float
    rows: list[DecayRow]
    eta8_comparison: dict
    special_mixing: bool

    def row(self, family: str, key: str) -> DecayRow:
        for r in self.rows:
            if r.family == family and r.operator == key:
                return r
        raise KeyError((family, key))


def decay_report(p: YangianParams, alpha1: float, alpha2: float) -> DecayReport:
    """Both operator families acting on eta: entanglement and channel per operator."""
    from .su3_yangian import TILDE_LABELS
    from .transitions import apply_transition, su3_display, su3_operator_catalog

    p.require_constraint()
    eta = construct_eta(alpha1, alpha2)
    rows = []
    raw_bar8 = None
    for family in ("tilde", "reduced"):
        catalog = su3_operator_catalog(p, family)
        for key in TILDE_LABELS:
            out = apply_transition(catalog[key], eta, su3_display(family, key))
            if family == "reduced" and key == "I8":
                raw_bar8 = out.raw_state.amplitudes
            rows.append(
                DecayRow(family, key, out.operator_label, out.final_state, out.entanglement_after,
                         "".join(out.channels), out.components)
            )  # fmt: skip

    reference = reference_eta8_bar(alpha1, alpha2)
    oracle = decompose(PureState((3, 3), raw_bar8))
    comparison = {
        "oracle_state": raw_bar8,
        "reference_state": reference["state"],
        "state_deviation": float(np.linalg.norm(raw_bar8 - reference["state"])),
        "oracle_components": {k: oracle.components[k] for k in (ETA_SINGLET, ETA_OCTET, PI_ZERO)},
        "reference_components": reference["components"],
        "component_deviation": float(
            math.sqrt(sum(abs(oracle.components[k] - v) ** 2 for k, v in reference["components"].items()))
        ),
        "oracle_channel": oracle.channel(),
        "reference_channel": ETA_OCTET + ETA_SINGLET + PI_ZERO,
    }
    return DecayReport(p, alpha1, alpha2, rows, comparison, special_mixing(alpha1, alpha2))

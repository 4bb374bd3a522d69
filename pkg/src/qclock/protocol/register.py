"""Classical register bookkeeping: label packing, bit-routing rules and the
three-site exchange used by the spatial gadget."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument
from ..qcore import I2, SX, SZ


def _bit(b, name="bit") -> int:
    if b not in (0, 1):
        raise InvalidArgument(f"{name} must be 0 or 1, got {b!r}")
    return int(b)


@dataclass(frozen=True)
class ClassicalRegister:
    kappa_z: int = 0
    kappa_x: int = 0

    def __post_init__(self):
        _bit(self.kappa_z, "kappa_z")
        _bit(self.kappa_x, "kappa_x")

    @property
    def label(self) -> int:
        return 2 * self.kappa_z + self.kappa_x

    @classmethod
    def from_label(cls, label: int) -> "ClassicalRegister":
        if not 0 <= label < 4:
            raise InvalidArgument(f"label {label} outside 0..3")
        return cls(label >> 1, label & 1)

    def byproduct(self) -> np.ndarray:
        """X^{kappa_x} Z^{kappa_z}."""
        x = SX if self.kappa_x else I2
        z = SZ if self.kappa_z else I2
        return x @ z


def classical_update(kappa: ClassicalRegister, gamma: int) -> ClassicalRegister:
    """kappa_z' = kappa_x, kappa_x' = kappa_z + gamma (mod 2)."""
    gamma = _bit(gamma, "gamma")
    return ClassicalRegister(kappa.kappa_x, (kappa.kappa_z + gamma) % 2)


class Register:
    """How labels are read, updated and decoded into byproducts for one register design."""

    name: str

    def initial_labels(self) -> list[int]:
        raise NotImplementedError

    def size(self, step: int) -> int:
        raise NotImplementedError

    def pointer_bit(self, label: int) -> int:
        return 0

    def update(self, label: int, gamma: int) -> int:
        raise NotImplementedError

    def byproduct(self, label: int) -> np.ndarray:
        raise NotImplementedError


class PauliRegister(Register):
    """Two bits (kappa_z, kappa_x); d_C = 4."""

    name = "pauli"

    def initial_labels(self):
        return [0, 1, 2, 3]

    def size(self, step):
        return 4

    def pointer_bit(self, label):
        return label & 1

    def update(self, label, gamma):
        return classical_update(ClassicalRegister.from_label(label), gamma).label

    def byproduct(self, label):
        return ClassicalRegister.from_label(label).byproduct()


class PhaseRegister(Register):
    """One bit tracking a Z byproduct; d_C = 2."""

    name = "phase"

    def initial_labels(self):
        return [0, 1]

    def size(self, step):
        return 2

    def update(self, label, gamma):
        return (label + _bit(gamma, "gamma")) % 2

    def byproduct(self, label):
        return SZ if label else I2


class FullRegister(Register):
    """Keeps every outcome: after k steps d_C = 2^k."""

    name = "full"

    def initial_labels(self):
        return [0]

    def size(self, step):
        return 2**step

    def update(self, label, gamma):
        return 2 * label + _bit(gamma, "gamma")

    def byproduct(self, label):
        return I2


REGISTERS = {"pauli": PauliRegister, "phase": PhaseRegister, "full": FullRegister}


def make_register(name: str) -> Register:
    try:
        return REGISTERS[name]()
    except KeyError:
        raise InvalidArgument(f"unknown register {name!r}; choose from {sorted(REGISTERS)}") from None


def register_for_dc(d_c: int) -> str:
    """Register design for a forced size: 2 -> phase, 4 -> pauli, 0 -> full."""
    table = {2: "phase", 4: "pauli", 0: "full"}
    if d_c not in table:
        raise InvalidArgument(f"d_C must be one of 2, 4 or 0 (unbounded), got {d_c}")
    return table[d_c]


@dataclass(frozen=True)
class ExchangeMessage:
    src: str
    dst: str
    bit: str
    direction: str  # "time" for the double arrow, "space" for the two-sided arrow


def three_site_exchange(
    k1: ClassicalRegister,
    k2: ClassicalRegister,
    gamma0: int,
    gamma1: int,
    gamma2: int,
) -> dict:
    """Bit routing among the middle site Q0 and the two timeline sites Q1, Q2.

    Q1 and Q2 each hand one bit to Q0 (kappa^x_1 and kappa^z_2), Q0 measures and
    hands one bit back to each (kappa^z_0' to Q1, kappa^x_0' to Q2). Returns the
    Q0 input and output registers, the outgoing registers of Q1 and Q2, and the
    list of messages with their direction tags.
    """
    g0, g1, g2 = (_bit(g, "gamma") for g in (gamma0, gamma1, gamma2))
    k0_in = ClassicalRegister(kappa_z=k2.kappa_z, kappa_x=k1.kappa_x)
    k0_out = ClassicalRegister(kappa_z=k2.kappa_z, kappa_x=(k1.kappa_x + g0) % 2)
    k1_out = ClassicalRegister(k1.kappa_x, (k1.kappa_z + k0_out.kappa_z + g1) % 2)
    k2_out = ClassicalRegister((k2.kappa_x + k0_out.kappa_x) % 2, (k2.kappa_z + g2) % 2)
    messages = [
        ExchangeMessage("Q1", "Q0", "kappa_x0", "space"),
        ExchangeMessage("Q2", "Q0", "kappa_z0", "space"),
        ExchangeMessage("Q0", "Q1", "kappa_z0'", "space"),
        ExchangeMessage("Q0", "Q2", "kappa_x0'", "space"),
        ExchangeMessage("Q1", "Q1+", "kappa_z1'", "time"),
        ExchangeMessage("Q1", "Q1+", "kappa_x1'", "time"),
        ExchangeMessage("Q2", "Q2+", "kappa_z2'", "time"),
        ExchangeMessage("Q2", "Q2+", "kappa_x2'", "time"),
    ]
    return {"Q0_in": k0_in, "Q0": k0_out, "Q1": k1_out, "Q2": k2_out, "messages": messages}

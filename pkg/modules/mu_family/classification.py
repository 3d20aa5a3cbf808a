# modules/mu_family/classification.py

"""
Orbits of the eight-parameter family under the substitutions.

The parameter action only sees P_1 = a, M_2 = m, T_4 = t and the
translation u = (M_3^2 - 2 M_2 M_4) / M_2^2:

    alpha_1 a^2/(tm)   alpha_2 a^2/t   alpha_3 am/t   alpha_4 a/t
    beta_1  m(beta_1 + gamma_2 u/2)/(t a^2)           beta_2 m/(ta)
    gamma_1 m(gamma_1 - alpha_3 u)/(ta)               gamma_2 m/t

Normal forms are reached by a fixed sequence of translations and
scalings. Over the rationals a parameter that would need a square, cube,
fourth or sixth root is brought to its power-free class representative
instead of 1; the normal form records the root degree and the slot.
"""

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from modules.core.errors import LeibnizLabError, SchemaError
from modules.core.scalars import power_class
from modules.mu_family.mu4 import (
    PARAMETER_NAMES,
    MuParams,
    MuTransform,
    mu4_compose,
    mu4_inverse,
    mu4_transform_action,
)
from modules.utils.logger import CustomLogger

logger = CustomLogger("classification")

_REPO_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
PUBLISHED_TABLE_PATH = os.path.join(_REPO_ROOT, "data", "classification", "mu4_published.json")
PUBLISHED_COUNT = 69
_FIELDS = ("a1", "a2", "a3", "a4", "b1", "b2", "g1", "g2")
SYMBOLS = frozenset({"a1", "a2", "b1", "b2", "g1"})


@dataclass(frozen=True)
class Family:
    """
    One orbit family.

    ``template`` lists the eight slots; symbols (a1, a2, b1, b2, g1) are
    free. ``class_slot`` / ``root_degree`` mark a slot that holds a power
    class representative: its template value 1 stands for any nonzero
    representative (a symbol there also allows 0).
    """

    template: Tuple[str, ...]
    class_slot: Optional[int] = None
    root_degree: Optional[int] = None
    listed_in_published_table: bool = True

    @property
    def key(self) -> str:
        return ",".join(self.template)

    def free_slots(self) -> List[int]:
        return [i for i, v in enumerate(self.template) if v in SYMBOLS]

    def matches(self, p: MuParams) -> bool:
        for slot, (symbol, value) in enumerate(zip(self.template, p.as_tuple())):
            if symbol in SYMBOLS:
                continue
            if slot == self.class_slot:
                if value == 0 or power_class(value, self.root_degree)[0] != value:
                    return False
                continue
            if Fraction(symbol) != value:
                return False
        return True

    def instantiate(self, values: Dict[str, Fraction]) -> MuParams:
        """Fill the symbols from ``values``; unspecified symbols default to 1."""
        return MuParams.of(
            [values.get(v, Fraction(1)) if v in SYMBOLS else Fraction(v) for v in self.template]
        )


def _family(key: str, slot: Optional[str] = None, degree: Optional[int] = None, listed: bool = True):
    return Family(
        tuple(key.split(",")),
        PARAMETER_NAMES.index(slot) if slot else None,
        degree,
        listed,
    )


# corrected catalogue, in the published order with the two missing families
# inserted and the two split families merged
_CATALOGUE = (
    # alpha_3 != 0, gamma_2 != 0
    _family("a1,a2,1,1,b1,b2,0,1"),
    _family("a1,1,1,0,b1,b2,0,1"),
    _family("1,0,1,0,b1,b2,0,1", "alpha1", 2),
    _family("0,0,1,0,b1,b2,0,1", listed=False),
    # alpha_3 != 0, gamma_2 = 0
    _family("a1,1,1,1,b1,b2,0,0"),
    _family("1,0,1,1,b1,b2,0,0"),
    _family("0,0,1,1,1,b2,0,0", "beta1", 3),
    _family("0,0,1,1,0,1,0,0", "beta2", 2),
    _family("0,0,1,1,0,0,0,0"),
    _family("1,1,1,0,b1,b2,0,0"),
    _family("0,1,1,0,1,b2,0,0", "beta1", 3),
    _family("0,1,1,0,0,1,0,0", "beta2", 2),
    _family("0,1,1,0,0,0,0,0"),
    _family("1,0,1,0,1,b2,0,0", "beta1", 6),
    _family("1,0,1,0,0,1,0,0", "beta2", 4),
    _family("1,0,1,0,0,0,0,0", listed=False),
    _family("0,0,1,0,1,b2,0,0", "beta1", 3),
    _family("0,0,1,0,0,1,0,0", "beta2", 2),
    _family("0,0,1,0,0,0,0,0"),
    # alpha_3 = 0, gamma_2 != 0
    _family("a1,1,0,1,0,b2,g1,1"),
    _family("a1,0,0,1,0,1,g1,1"),
    _family("a1,0,0,1,0,0,1,1"),
    _family("a1,0,0,1,0,0,0,1"),
    _family("a1,1,0,0,0,1,g1,1"),
    _family("a1,1,0,0,0,0,1,1"),
    _family("a1,1,0,0,0,0,0,1", "alpha1", 2),
    _family("1,0,0,0,0,1,g1,1", "alpha1", 2),
    _family("1,0,0,0,0,0,1,1", "alpha1", 2),
    _family("1,0,0,0,0,0,0,1", "alpha1", 2),
    _family("0,0,0,0,0,1,g1,1"),
    _family("0,0,0,0,0,0,1,1"),
    _family("0,0,0,0,0,0,0,1"),
    # alpha_3 = gamma_2 = 0
    _family("1,1,0,1,b1,b2,g1,0"),
    _family("0,1,0,1,1,b2,g1,0"),
    _family("0,1,0,1,0,1,g1,0"),
    _family("0,1,0,1,0,0,1,0"),
    _family("0,1,0,1,0,0,0,0"),
    _family("1,0,0,1,1,b2,g1,0", "beta1", 2),
    _family("1,0,0,1,0,1,g1,0"),
    _family("1,0,0,1,0,0,1,0"),
    _family("1,0,0,1,0,0,0,0"),
    _family("0,0,0,1,1,1,g1,0"),
    _family("0,0,0,1,1,0,1,0"),
    _family("0,0,0,1,1,0,0,0"),
    _family("0,0,0,1,0,1,g1,0", listed=False),
    _family("0,0,0,1,0,0,1,0"),
    _family("0,0,0,1,0,0,0,0"),
    _family("1,1,0,0,1,b2,g1,0", "beta1", 4),
    _family("1,1,0,0,0,1,g1,0", "beta2", 3),
    _family("1,1,0,0,0,0,1,0", "gamma1", 3),
    _family("1,1,0,0,0,0,0,0"),
    _family("1,0,0,0,1,1,g1,0", "beta1", 2),
    _family("1,0,0,0,1,0,1,0", "beta1", 2),
    _family("1,0,0,0,1,0,0,0", "beta1", 2),
    _family("1,0,0,0,0,1,g1,0", listed=False),
    _family("1,0,0,0,0,0,1,0"),
    _family("1,0,0,0,0,0,0,0"),
    _family("0,1,0,0,1,1,g1,0"),
    _family("0,1,0,0,1,0,1,0"),
    _family("0,1,0,0,1,0,0,0"),
    _family("0,1,0,0,0,1,g1,0"),
    _family("0,1,0,0,0,0,1,0"),
    _family("0,1,0,0,0,0,0,0"),
    _family("0,0,0,0,1,1,g1,0"),
    _family("0,0,0,0,0,1,g1,0"),
    _family("0,0,0,0,1,0,1,0"),
    _family("0,0,0,0,1,0,0,0"),
    _family("0,0,0,0,0,0,1,0"),
    _family("0,0,0,0,0,0,0,0"),
)

_BY_KEY = {family.key: family for family in _CATALOGUE}

# published cells that the corrected catalogue replaces
SUPERSEDED = {
    "0,0,0,1,0,1,1,0": "0,0,0,1,0,1,g1,0",
    "0,0,0,1,0,1,0,0": "0,0,0,1,0,1,g1,0",
    "1,0,0,0,0,1,1,0": "1,0,0,0,0,1,g1,0",
    "1,0,0,0,0,1,0,0": "1,0,0,0,0,1,g1,0",
}


def mu4_catalogue() -> Tuple[Family, ...]:
    return _CATALOGUE


def load_published_catalogue(filepath: str = PUBLISHED_TABLE_PATH) -> List[str]:
    """
    Read the transcribed published table.

    Raises:
        FileNotFoundError: if the data file is missing
        SchemaError: if it does not hold exactly 69 eight-slot representatives
    """
    if not os.path.exists(filepath):
        logger.error(f"Published table not found: {filepath}")
        raise FileNotFoundError(f"Missing published table at {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        data = json.load(f)
    rows = data.get("representatives")
    if not isinstance(rows, list) or len(rows) != PUBLISHED_COUNT or data.get("expected_count") != PUBLISHED_COUNT:
        raise SchemaError(f"Published table must list {PUBLISHED_COUNT} representatives")
    for row in rows:
        if len(str(row).split(",")) != 8:
            raise SchemaError(f"Representative {row!r} does not have eight slots")
    logger.debug(f"Loaded {len(rows)} published representatives from {filepath}")
    return rows


def catalogue_differences(published: List[str]) -> Dict[str, List[str]]:
    """Published cells missing from, and corrected families absent in, each other."""
    corrected = [family.key for family in _CATALOGUE]
    return {
        "superseded": [row for row in published if row not in _BY_KEY],
        "added": [key for key in corrected if key not in published and key not in SUPERSEDED.values()],
        "merged": sorted(set(SUPERSEDED.values())),
    }


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def _pattern(values) -> str:
    return "".join("1" if v else "0" for v in values)


def mu4_signature(p: MuParams) -> Dict[str, Optional[str]]:
    """
    Orbit invariants: zero-pattern of (alpha_1, alpha_2, alpha_3, alpha_4,
    beta_2, gamma_2), the pattern of beta_1 when gamma_2 = 0, of gamma_1
    when alpha_3 = 0, and of 2 alpha_3 beta_1 + gamma_1 gamma_2.
    """
    return {
        "pattern": _pattern((p.a1, p.a2, p.a3, p.a4, p.b2, p.g2)),
        "beta1": _pattern((p.b1,)) if p.g2 == 0 else None,
        "gamma1": _pattern((p.g1,)) if p.a3 == 0 else None,
        "translation_invariant": _pattern((2 * p.a3 * p.b1 + p.g1 * p.g2,)),
    }


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    representative: MuParams
    witness: MuTransform
    family: Family
    root_degree: Optional[int] = None
    root_slot: Optional[str] = None

    @property
    def listed_in_published_table(self) -> bool:
        return self.family.listed_in_published_table

    @property
    def family_index(self) -> int:
        return _CATALOGUE.index(self.family) + 1


class _Normalizer:
    def __init__(self, p: MuParams):
        self.p = p
        self.g = MuTransform.identity()
        self.root: Optional[Tuple[str, int]] = None

    def step(self, a=1, m=1, t=1, u=0) -> None:
        h = MuTransform.scaling(a, m, t, u)
        self.p = mu4_transform_action(self.p, h)
        self.g = mu4_compose(self.g, h)
        logger.debug(f"step a={a} m={m} t={t} u={u} -> {self.p}")

    def power(self, name: str, degree: int) -> Fraction:
        """Root r with value = rep * r^degree for the current value of slot ``name``."""
        value = getattr(self.p, name)
        _, root = power_class(value, degree)
        self.root = (PARAMETER_NAMES[_FIELDS.index(name)], degree)
        return root

    def flip_if_negative(self, a, m, t) -> None:
        # (beta_2, gamma_1) -> (-beta_2, -gamma_1); keep the first nonzero positive
        lead = self.p.b2 if self.p.b2 != 0 else self.p.g1
        if lead < 0:
            self.step(a=a, m=m, t=t)

    def run(self) -> str:
        p = self.p
        if p.a3 != 0 and p.g2 != 0:
            return self._alpha3_gamma2()
        if p.a3 != 0:
            return self._alpha3_only()
        if p.g2 != 0:
            return self._gamma2_only()
        return self._torus()

    def _alpha3_gamma2(self) -> str:
        self.step(u=self.p.g1 / self.p.a3)
        self.step(a=self.p.g2 / self.p.a3, t=self.p.g2)
        # remaining freedom: m = t = lam scales (alpha_1, alpha_2, alpha_4) by (lam^-2, lam^-1, lam^-1)
        p = self.p
        if p.a4:
            self.step(m=p.a4, t=p.a4)
            return "a1,a2,1,1,b1,b2,0,1"
        if p.a2:
            self.step(m=p.a2, t=p.a2)
            return "a1,1,1,0,b1,b2,0,1"
        if p.a1:
            root = self.power("a1", 2)
            self.step(m=root, t=root)
            return "1,0,1,0,b1,b2,0,1"
        return "0,0,1,0,b1,b2,0,1"

    def _alpha3_only(self) -> str:
        self.step(u=self.p.g1 / self.p.a3)
        self.step(t=self.p.a3)
        # from here t = am: alpha_1 a/m^2, alpha_2 a/m, alpha_4/m, beta_1/a^3, beta_2/a^2
        p = self.p
        if p.a4:
            self.step(m=p.a4, t=p.a4)
            p = self.p
            if p.a2:
                a = 1 / p.a2
                self.step(a=a, t=a)
                return "a1,1,1,1,b1,b2,0,0"
            if p.a1:
                a = 1 / p.a1
                self.step(a=a, t=a)
                return "1,0,1,1,b1,b2,0,0"
            if p.b1:
                root = self.power("b1", 3)
                self.step(a=root, t=root)
                return "0,0,1,1,1,b2,0,0"
            if p.b2:
                root = self.power("b2", 2)
                self.step(a=root, t=root)
                return "0,0,1,1,0,1,0,0"
            return "0,0,1,1,0,0,0,0"
        if p.a1 and p.a2:
            m = p.a1 / p.a2
            a = p.a1 / p.a2 ** 2
            self.step(a=a, m=m, t=a * m)
            return "1,1,1,0,b1,b2,0,0"
        if p.a2:
            self.step(m=p.a2, t=p.a2)
            # now m = a keeps alpha_2: beta_1/a^3, beta_2/a^2
            return self._cube_square("0,1,1,0", same_m=True)
        if p.a1:
            a = 1 / p.a1
            self.step(a=a, t=a)
            # now a = m^2, t = m^3 keeps alpha_1: beta_1/m^6, beta_2/m^4
            p = self.p
            if p.b1:
                root = self.power("b1", 6)
                self.step(a=root ** 2, m=root, t=root ** 3)
                return "1,0,1,0,1,b2,0,0"
            if p.b2:
                root = self.power("b2", 4)
                self.step(a=root ** 2, m=root, t=root ** 3)
                return "1,0,1,0,0,1,0,0"
            return "1,0,1,0,0,0,0,0"
        return self._cube_square("0,0,1,0", same_m=False)

    def _cube_square(self, prefix: str, same_m: bool) -> str:
        p = self.p
        if p.b1:
            root = self.power("b1", 3)
            m = root if same_m else 1
            self.step(a=root, m=m, t=root * m)
            return f"{prefix},1,b2,0,0"
        if p.b2:
            root = self.power("b2", 2)
            m = root if same_m else 1
            self.step(a=root, m=m, t=root * m)
            return f"{prefix},0,1,0,0"
        return f"{prefix},0,0,0,0"

    def _gamma2_only(self) -> str:
        self.step(u=-2 * self.p.b1 / self.p.g2)
        self.step(t=self.p.g2)
        # from here t = m: alpha_1 a^2/m^2, alpha_2 a^2/m, alpha_4 a/m, beta_2/a, gamma_1/a
        p = self.p
        if p.a4:
            self.step(m=p.a4, t=p.a4)
            p = self.p
            # a = m = t keeps alpha_4 and alpha_1
            if p.a2:
                a = 1 / p.a2
                self.step(a=a, m=a, t=a)
                return "a1,1,0,1,0,b2,g1,1"
            if p.b2:
                self.step(a=p.b2, m=p.b2, t=p.b2)
                return "a1,0,0,1,0,1,g1,1"
            if p.g1:
                self.step(a=p.g1, m=p.g1, t=p.g1)
                return "a1,0,0,1,0,0,1,1"
            return "a1,0,0,1,0,0,0,1"
        if p.a2:
            self.step(m=p.a2, t=p.a2)
            p = self.p
            # m = t = a^2 keeps alpha_2: alpha_1/a^2, beta_2/a, gamma_1/a
            if p.b2:
                self.step(a=p.b2, m=p.b2 ** 2, t=p.b2 ** 2)
                return "a1,1,0,0,0,1,g1,1"
            if p.g1:
                self.step(a=p.g1, m=p.g1 ** 2, t=p.g1 ** 2)
                return "a1,1,0,0,0,0,1,1"
            if p.a1:
                root = self.power("a1", 2)
                self.step(a=root, m=root ** 2, t=root ** 2)
            return "a1,1,0,0,0,0,0,1"
        lead = "0"
        if p.a1:
            root = self.power("a1", 2)
            self.step(m=root, t=root)
            lead = "1"
        p = self.p
        # a = m = t keeps alpha_1: beta_2/a, gamma_1/a
        if p.b2:
            self.step(a=p.b2, m=p.b2, t=p.b2)
            return f"{lead},0,0,0,0,1,g1,1"
        if p.g1:
            self.step(a=p.g1, m=p.g1, t=p.g1)
            return f"{lead},0,0,0,0,0,1,1"
        return f"{lead},0,0,0,0,0,0,1"

    def _torus(self) -> str:
        p = self.p
        if p.a4:
            self.step(t=p.a4)
            return self._torus_alpha4()
        if p.a2:
            self.step(t=p.a2)
            # t = a^2 keeps alpha_2: alpha_1/m, beta_1 m/a^4, beta_2 m/a^3, gamma_1 m/a^3
            p = self.p
            if p.a1:
                self.step(m=p.a1)
                # m = 1, t = a^2: beta_1/a^4, beta_2/a^3, gamma_1/a^3
                p = self.p
                if p.b1:
                    root = self.power("b1", 4)
                    self.step(a=root, t=root ** 2)
                    self.flip_if_negative(a=-1, m=1, t=1)
                    return "1,1,0,0,1,b2,g1,0"
                if p.b2:
                    root = self.power("b2", 3)
                    self.step(a=root, t=root ** 2)
                    return "1,1,0,0,0,1,g1,0"
                if p.g1:
                    root = self.power("g1", 3)
                    self.step(a=root, t=root ** 2)
                    return "1,1,0,0,0,0,1,0"
                return "1,1,0,0,0,0,0,0"
            if p.b1 and p.b2:
                a = p.b1 / p.b2
                self.step(a=a, m=a ** 3 / p.b2, t=a ** 2)
                return "0,1,0,0,1,1,g1,0"
            if p.b1 and p.g1:
                a = p.b1 / p.g1
                self.step(a=a, m=a ** 3 / p.g1, t=a ** 2)
                return "0,1,0,0,1,0,1,0"
            if p.b1:
                self.step(m=1 / p.b1)
                return "0,1,0,0,1,0,0,0"
            if p.b2:
                self.step(m=1 / p.b2)
                return "0,1,0,0,0,1,g1,0"
            if p.g1:
                self.step(m=1 / p.g1)
                return "0,1,0,0,0,0,1,0"
            return "0,1,0,0,0,0,0,0"
        if p.a1:
            self.step(t=p.a1)
            # t = a^2/m keeps alpha_1: beta_1 m^2/a^4, beta_2 m^2/a^3, gamma_1 m^2/a^3
            p = self.p
            if p.b1:
                rep, _ = power_class(p.b1, 2)
                root = self.power("b1", 2)
                partner = p.b2 or p.g1
                if partner:
                    a = p.b1 / (partner * rep)
                    m = a ** 2 / root
                    self.step(a=a, m=m, t=a ** 2 / m)
                    return "1,0,0,0,1,1,g1,0" if p.b2 else "1,0,0,0,1,0,1,0"
                self.step(m=1 / root, t=root)
                return "1,0,0,0,1,0,0,0"
            if p.b2:
                self.step(a=p.b2, m=p.b2, t=p.b2)
                return "1,0,0,0,0,1,g1,0"
            if p.g1:
                self.step(a=p.g1, m=p.g1, t=p.g1)
                return "1,0,0,0,0,0,1,0"
            return "1,0,0,0,0,0,0,0"
        # free a, m, t: beta_1 m/(t a^2), beta_2 m/(ta), gamma_1 m/(ta)
        if p.b1 and p.b2:
            a = p.b1 / p.b2
            self.step(a=a, t=p.b2 / a)
            return "0,0,0,0,1,1,g1,0"
        if p.b1 and p.g1:
            a = p.b1 / p.g1
            self.step(a=a, t=p.g1 / a)
            return "0,0,0,0,1,0,1,0"
        if p.b1:
            self.step(t=p.b1)
            return "0,0,0,0,1,0,0,0"
        if p.b2:
            self.step(t=p.b2)
            return "0,0,0,0,0,1,g1,0"
        if p.g1:
            self.step(t=p.g1)
            return "0,0,0,0,0,0,1,0"
        return "0,0,0,0,0,0,0,0"

    def _torus_alpha4(self) -> str:
        # t = a keeps alpha_4: alpha_1 a/m, alpha_2 a, beta_1 m/a^3, beta_2 m/a^2, gamma_1 m/a^2
        p = self.p
        if p.a2:
            a = 1 / p.a2
            self.step(a=a, t=a)
            p = self.p
            # a = t = 1: alpha_1/m, beta_1 m, beta_2 m, gamma_1 m
            if p.a1:
                self.step(m=p.a1)
                return "1,1,0,1,b1,b2,g1,0"
            for value, key in ((p.b1, "0,1,0,1,1,b2,g1,0"), (p.b2, "0,1,0,1,0,1,g1,0"), (p.g1, "0,1,0,1,0,0,1,0")):
                if value:
                    self.step(m=1 / value)
                    return key
            return "0,1,0,1,0,0,0,0"
        if p.a1:
            self.step(m=p.a1)
            p = self.p
            # a = m = t keeps alpha_1, alpha_4: beta_1/a^2, beta_2/a, gamma_1/a
            if p.b1:
                root = self.power("b1", 2)
                self.step(a=root, m=root, t=root)
                self.flip_if_negative(a=-1, m=-1, t=-1)
                return "1,0,0,1,1,b2,g1,0"
            if p.b2:
                self.step(a=p.b2, m=p.b2, t=p.b2)
                return "1,0,0,1,0,1,g1,0"
            if p.g1:
                self.step(a=p.g1, m=p.g1, t=p.g1)
                return "1,0,0,1,0,0,1,0"
            return "1,0,0,1,0,0,0,0"
        # t = a, free a and m: beta_1 m/a^3, beta_2 m/a^2, gamma_1 m/a^2
        if p.b1 and p.b2:
            a = p.b1 / p.b2
            self.step(a=a, m=a ** 2 / p.b2, t=a)
            return "0,0,0,1,1,1,g1,0"
        if p.b1 and p.g1:
            a = p.b1 / p.g1
            self.step(a=a, m=a ** 2 / p.g1, t=a)
            return "0,0,0,1,1,0,1,0"
        if p.b1:
            self.step(m=1 / p.b1)
            return "0,0,0,1,1,0,0,0"
        if p.b2:
            self.step(m=1 / p.b2)
            return "0,0,0,1,0,1,g1,0"
        if p.g1:
            self.step(m=1 / p.g1)
            return "0,0,0,1,0,0,1,0"
        return "0,0,0,1,0,0,0,0"


def mu4_normalize(p: MuParams) -> NormalForm:
    """
    Canonical representative of the orbit of p and a substitution taking p to it.

    Raises:
        LeibnizLabError: if the reached representative does not fit its family
            or the witness does not map p onto it
    """
    normalizer = _Normalizer(p)
    key = normalizer.run()
    family = _BY_KEY[key]
    representative = normalizer.p
    if not family.matches(representative):
        logger.error(f"Normal form {representative} does not fit family {key}")
        raise LeibnizLabError(f"Normalizer produced {representative} outside family {key}")
    if mu4_transform_action(p, normalizer.g) != representative:
        logger.error(f"Witness {normalizer.g.to_list()} does not reproduce {representative}")
        raise LeibnizLabError("Normalizer witness is inconsistent")
    root_slot, root_degree = normalizer.root if normalizer.root else (None, None)
    logger.debug(f"mu({p}) -> family {key}: {representative}")
    return NormalForm(representative, normalizer.g, family, root_degree, root_slot)


def mu4_is_isomorphic(p: MuParams, q: MuParams) -> Optional[MuTransform]:
    """A substitution taking p to q, or None when they lie in different orbits."""
    if mu4_signature(p) != mu4_signature(q):
        return None
    left, right = mu4_normalize(p), mu4_normalize(q)
    if left.representative != right.representative:
        return None
    witness = mu4_compose(left.witness, mu4_inverse(right.witness))
    if mu4_transform_action(p, witness) != q:
        logger.error(f"Composed witness fails to map mu({p}) onto mu({q})")
        raise LeibnizLabError("Isomorphism witness is inconsistent")
    return witness

# modules/validation/validator.py

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from modules.constructions.builders import direct_sum, make_n_n1
from modules.constructions.representations import representation_defects
from modules.core.algebra import (
    antisymmetry_violations,
    apply_basis_change,
    is_filiform,
    leibniz_residuals,
    lower_central_series,
    quotient,
    series_dims,
)
from modules.core.errors import SingularBasisChangeError
from modules.core.scalars import format_scalar
from modules.core.types import ModuleAction, StructureTensor, Vector
from modules.fock.fock_module import (
    FockAlgebra,
    fock_to_n_n1_basis_change,
    monomial_ideal,
    monomial_ideal_defects,
    windowed_leibniz_report,
)
from modules.mu_family.general import (
    GeneralParams,
    bruteforce_constraint_oracle,
    constraint_report,
)
from modules.mu_family.mu4 import (
    MuParams,
    MuTransform,
    mu4_display_residuals,
    mu4_induced_basis_change,
    mu4_table,
    mu4_transform_action,
)
from modules.utils.logger import CustomLogger


@dataclass
class CheckResult:
    """One named check. A failed check carries its first counterexample."""

    name: str
    passed: bool
    detail: str = ""
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _residual_json(v: Vector) -> List[list]:
    return [[k, format_scalar(c)] for k, c in v.terms()]


def _labels(labels: Sequence[str], indices: Sequence[int]) -> List[str]:
    return [labels[i - 1] for i in indices]


class AlgebraValidator:
    """
    Runs named identity and structure checks on tensors, Fock algebras and
    parameter points, and collects them in order for a run report.
    """

    def __init__(self, logger: Optional[CustomLogger] = None, workers: Optional[int] = None):
        self.logger = logger or CustomLogger("AlgebraValidator")
        self.workers = workers
        self.results: List[CheckResult] = []

    def _record(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        if result.passed:
            self.logger.debug(f"check {result.name}: passed ({result.detail})")
        else:
            self.logger.info(f"check {result.name}: FAILED ({result.detail})")
        return result

    def _triple_failure(
        self, name: str, labels: Sequence[str], found: List[Tuple[Tuple[int, ...], Vector]], what: str
    ) -> CheckResult:
        indices, residual = found[0]
        return self._record(
            CheckResult(
                name,
                False,
                f"{len(found)} {what}",
                {
                    "triple": list(indices),
                    "labels": _labels(labels, indices),
                    "residual": _residual_json(residual),
                },
            )
        )

    @property
    def all_passed(self) -> bool:
        return all(result.passed for result in self.results)

    def reset(self) -> None:
        self.results = []

    # -- tensors ------------------------------------------------------------

    def check_leibniz(self, T: StructureTensor, name: str = "leibniz") -> CheckResult:
        found = leibniz_residuals(T, self.workers)
        if found:
            return self._triple_failure(name, T.basis_labels, found, "nonzero residuals")
        return self._record(CheckResult(name, True, f"{T.dim ** 3} triples"))

    def check_antisymmetry(self, T: StructureTensor) -> CheckResult:
        violations = antisymmetry_violations(T)
        if violations:
            (i, j), total = violations[0]
            return self._record(
                CheckResult(
                    "antisymmetry",
                    False,
                    f"{len(violations)} pairs with [a,b] + [b,a] != 0",
                    {"pair": [i, j], "labels": _labels(T.basis_labels, (i, j)), "residual": _residual_json(total)},
                )
            )
        return self._record(CheckResult("antisymmetry", True, "[a,b] = -[b,a] on all pairs"))

    def check_lie(self, T: StructureTensor) -> CheckResult:
        # antisymmetric Leibniz algebras are exactly the Lie algebras
        if antisymmetry_violations(T):
            return self._record(CheckResult("lie", False, "not antisymmetric"))
        found = leibniz_residuals(T, self.workers)
        if found:
            return self._triple_failure("lie", T.basis_labels, found, "Jacobi residuals")
        return self._record(CheckResult("lie", True, "antisymmetric Leibniz algebra"))

    def check_nilpotent(self, T: StructureTensor) -> CheckResult:
        dims = series_dims(lower_central_series(T))
        passed = dims[-1] == 0
        return self._record(CheckResult("nilpotent", passed, f"lower central series dims {list(dims)}"))

    def check_filiform(self, T: StructureTensor) -> CheckResult:
        dims = series_dims(lower_central_series(T))
        return self._record(CheckResult("filiform", is_filiform(T), f"lower central series dims {list(dims)}"))

    def validate_tensor(self, T: StructureTensor) -> List[CheckResult]:
        """The five standard checks of ``verify``."""
        return [
            self.check_leibniz(T),
            self.check_antisymmetry(T),
            self.check_lie(T),
            self.check_nilpotent(T),
            self.check_filiform(T),
        ]

    def check_representation(self, action: ModuleAction, T: StructureTensor) -> CheckResult:
        defects = representation_defects(action, T)
        if defects:
            labels = [f"e{m}" for m in range(1, action.module_dim + 1)]
            (m, a, b), residual = defects[0]
            return self._record(
                CheckResult(
                    "representation",
                    False,
                    f"{len(defects)} defects",
                    {
                        "triple": [m, a, b],
                        "labels": [labels[m - 1], T.basis_labels[a - 1], T.basis_labels[b - 1]],
                        "residual": _residual_json(residual),
                    },
                )
            )
        return self._record(CheckResult("representation", True, "right module identity holds"))

    # -- Fock ---------------------------------------------------------------

    def check_fock_window(self, F: FockAlgebra) -> CheckResult:
        report = windowed_leibniz_report(F, self.workers)
        detail = (
            f"{report.triples_checked} triples checked, {report.triples_skipped} skipped, "
            f"window of {report.window_size} operands up to degree {F.safe_degree}"
        )
        if report.residuals:
            (indices, residual) = report.residuals[0]
            return self._record(
                CheckResult(
                    "fock_window",
                    False,
                    f"{len(report.residuals)} nonzero residuals; {detail}",
                    {"triple": list(indices), "labels": _labels(F.labels(), indices), "residual": _residual_json(residual)},
                )
            )
        return self._record(CheckResult("fock_window", True, detail))

    def check_fock_ideal(self, F: FockAlgebra) -> CheckResult:
        defects = monomial_ideal_defects(F)
        if defects:
            first = defects[0]
            return self._record(
                CheckResult(
                    "fock_ideal",
                    False,
                    f"{len(defects)} defects between the monomials and the right annihilator",
                    {"kind": first.kind, "basis": list(first.basis), "labels": _labels(F.labels(), first.basis)},
                )
            )
        return self._record(CheckResult("fock_ideal", True, "monomials span exactly the right annihilator"))

    def check_fock_quotient(self, F: FockAlgebra) -> CheckResult:
        """Quotient by the monomials, rescaled to x_1 = dbar and x_i = xbar^(n-i)/(n-i)!, against n_{n,1}."""
        tensor, _ = F.window_tensor()
        reduced, _ = quotient(tensor, monomial_ideal(F))
        rescaled = apply_basis_change(reduced, fock_to_n_n1_basis_change(F.block_dims))
        expected = direct_sum([make_n_n1(n) for n in F.block_dims])
        mismatched = [
            (i, j)
            for i in range(1, expected.dim + 1)
            for j in range(1, expected.dim + 1)
            if rescaled.product(i, j) != expected.product(i, j)
        ]
        if mismatched:
            i, j = mismatched[0]
            return self._record(
                CheckResult(
                    "fock_quotient",
                    False,
                    f"{len(mismatched)} products differ from the model algebra",
                    {"pair": [i, j], "labels": _labels(expected.basis_labels, (i, j))},
                )
            )
        return self._record(CheckResult("fock_quotient", True, f"quotient matches n_n1 blocks {list(F.block_dims)}"))

    # -- parameter families -------------------------------------------------

    def check_constraints(self, p: GeneralParams, verbatim: bool = False) -> CheckResult:
        report = constraint_report(p, verbatim)
        failed = [r for r in report if r.value]
        if failed:
            first = failed[0]
            return self._record(
                CheckResult(
                    "constraints",
                    False,
                    f"{len(failed)} of {len(report)} restriction coordinates nonzero",
                    {"restriction": first.label, "value": format_scalar(first.value)},
                )
            )
        return self._record(CheckResult("constraints", True, f"all restrictions hold at n = {p.n}"))

    def check_oracle(self, p: GeneralParams, verbatim: bool = False) -> CheckResult:
        values = bruteforce_constraint_oracle(p.n, p, verbatim)
        if values:
            return self._record(
                CheckResult(
                    "oracle",
                    False,
                    f"{len(values)} nonzero identity coordinates",
                    {"value": format_scalar(values[0])},
                )
            )
        return self._record(CheckResult("oracle", True, f"full identity scan at n = {p.n}"))

    def check_mu4(self, p: MuParams, verbatim: bool = False) -> CheckResult:
        T = mu4_table(p, verbatim=verbatim)
        if verbatim:
            found = mu4_display_residuals(p)
            name = "leibniz_verbatim"
        else:
            found = leibniz_residuals(T, self.workers)
            name = "leibniz"
        if found:
            return self._triple_failure(name, T.basis_labels, found, "nonzero residuals")
        return self._record(CheckResult(name, True, "512 triples"))

    def check_witness(self, p: MuParams, g: MuTransform, expected: MuParams) -> CheckResult:
        """The full basis change induced by g carries mu(p) onto the table of ``expected``."""
        if mu4_transform_action(p, g) != expected:
            return self._record(
                CheckResult("induced_basis_change", False, "substitution does not reach the expected parameters",
                            {"reached": mu4_transform_action(p, g).to_list(), "expected": expected.to_list()})
            )
        try:
            B, _ = mu4_induced_basis_change(p, g)
        except SingularBasisChangeError as e:
            return self._record(CheckResult("induced_basis_change", False, str(e), {"witness": g.to_list()}))
        passed = apply_basis_change(mu4_table(p), B).same_brackets(mu4_table(expected))
        return self._record(CheckResult("induced_basis_change", passed, "8x8 basis change reproduces the table"))

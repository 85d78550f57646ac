"""CHSH analysis, small complex linear algebra, and entanglement diagnostics.

Works on C^4 with the canonical isomorphism C^4 = C^2 (x) C^2 under
row-major factor ordering: index 0 <-> (0,0), 1 <-> (0,1), 2 <-> (1,0),
3 <-> (1,1); the first factor is the A-measurement side.

A coincidence table yields four expectation values (sum of sign times
probability per block) and the CHSH combination
E(A',B') + E(A',B) + E(A,B') - E(A,B), with the classical bound 2 and the
Tsirelson bound 2*sqrt(2).  The marginal-law check compares each single
measurement's outcome marginals across the two blocks sharing it.

Entanglement diagnostics: a state is entangled iff its 2x2 reshape has
singular-value rank 2; an observable is a product measurement iff its
realignment (the 4x4 matrix reindexed as a map between factor spaces)
has operator-Schmidt rank 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Mapping

import numpy as np

from .data import BLOCKS, CoincidenceTable, _load_json, _read_text
from .errors import DataValidationError, SchemaError

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

NONLOCAL_NON_MARGINAL_BOX_1 = "nonlocal non-marginal box modeling 1"


@dataclass(frozen=True)
class ComplexVector4:
    """Four complex amplitudes, optionally validated as a unit state."""

    amplitudes: tuple[complex, complex, complex, complex]
    is_state: bool = True
    norm_tol: float = field(default=1e-3, repr=False, compare=False)

    def __post_init__(self):
        amplitudes = tuple(complex(a) for a in self.amplitudes)
        if len(amplitudes) != 4:
            raise DataValidationError(f"need 4 amplitudes, got {len(amplitudes)}")
        object.__setattr__(self, "amplitudes", amplitudes)
        if self.is_state:
            norm = math.sqrt(sum(abs(a) ** 2 for a in amplitudes))
            if abs(norm - 1.0) > self.norm_tol:
                raise DataValidationError(
                    f"state norm {norm!r} differs from 1 by more than {self.norm_tol}"
                )

    @classmethod
    def from_polar_degrees(
        cls, polar: list[tuple[float, float]], is_state: bool = True
    ) -> "ComplexVector4":
        """Build from (modulus, phase in degrees) pairs."""
        amplitudes = tuple(
            mod * complex(math.cos(math.radians(arg)), math.sin(math.radians(arg)))
            for mod, arg in polar
        )
        return cls(amplitudes=amplitudes, is_state=is_state)

    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)


@dataclass(frozen=True, eq=False)
class Observable4:
    """A 4x4 two-outcome observable with spectrum {+1, -1}, each twice.

    Tolerances default to values sized for 3-decimal printed matrices:
    Hermiticity 1e-3 entrywise, eigenvalues within 0.05 of +-1, trace
    within 0.05 of 0.
    """

    matrix: np.ndarray
    hermitian_tol: float = 1e-3
    eigenvalue_tol: float = 0.05
    trace_tol: float = 0.05

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise DataValidationError(f"observable must be 4x4, got {matrix.shape}")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
        if deviation > self.hermitian_tol:
            raise DataValidationError(
                f"not Hermitian: max entry deviation {deviation:.6g} "
                f"exceeds {self.hermitian_tol}"
            )
        trace = complex(np.trace(matrix))
        if abs(trace) > self.trace_tol:
            raise DataValidationError(
                f"trace {trace:.6g} not within {self.trace_tol} of 0"
            )
        eigenvalues = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)
        low, high = eigenvalues[:2], eigenvalues[2:]
        if np.max(np.abs(low + 1.0)) > self.eigenvalue_tol or np.max(
            np.abs(high - 1.0)
        ) > self.eigenvalue_tol:
            raise DataValidationError(
                f"eigenvalues {np.round(eigenvalues, 4).tolist()} not within "
                f"{self.eigenvalue_tol} of -1, -1, +1, +1"
            )


@dataclass(frozen=True)
class ExpectationValue:
    """Real part of <p|E|p> plus the imaginary residue as a diagnostic."""

    value: float
    imag_part: float


def expectation(
    state: ComplexVector4, obs: Observable4 | np.ndarray, hermitian_tol: float = 1e-3
) -> ExpectationValue:
    """<p|E|p>; the imaginary part must stay below 1e-3 and is reported."""
    if isinstance(obs, Observable4):
        matrix = obs.matrix
    else:
        matrix = np.array(obs, dtype=complex)
        if matrix.shape != (4, 4):
            raise DataValidationError(f"observable must be 4x4, got {matrix.shape}")
        deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
        if deviation > hermitian_tol:
            raise DataValidationError(
                f"not Hermitian: max entry deviation {deviation:.6g} "
                f"exceeds {hermitian_tol}"
            )
    vec = state.vector()
    raw = complex(np.vdot(vec, matrix @ vec))
    return ExpectationValue(value=raw.real, imag_part=abs(raw.imag))


@dataclass(frozen=True)
class ChshReport:
    e_ab: float
    e_abp: float
    e_apb: float
    e_apbp: float
    chsh: float
    classical_violated: bool
    tsirelson_respected: bool

    def __post_init__(self):
        eps = 1e-9
        for name in ("e_ab", "e_abp", "e_apb", "e_apbp"):
            value = getattr(self, name)
            if not -1.0 - eps <= value <= 1.0 + eps:
                raise DataValidationError(f"{name}={value!r} outside [-1, 1]")
        if not -4.0 - eps <= self.chsh <= 4.0 + eps:
            raise DataValidationError(f"chsh={self.chsh!r} outside [-4, 4]")

    def expectations(self) -> dict[str, float]:
        return {
            "AB": self.e_ab,
            "ABp": self.e_abp,
            "ApB": self.e_apb,
            "ApBp": self.e_apbp,
        }


def expectations_from_table(table: CoincidenceTable) -> ChshReport:
    """Per-block expectations and the CHSH combination."""
    e = {
        key: sum(outcome.sign * outcome.p for outcome in table.block(key))
        for key in BLOCKS
    }
    chsh = e["ApBp"] + e["ApB"] + e["ABp"] - e["AB"]
    return ChshReport(
        e_ab=e["AB"],
        e_abp=e["ABp"],
        e_apb=e["ApB"],
        e_apbp=e["ApBp"],
        chsh=chsh,
        classical_violated=abs(chsh) > 2.0,
        tsirelson_respected=abs(chsh) <= TSIRELSON_BOUND,
    )


@dataclass(frozen=True)
class MarginalComparison:
    label: str
    block_a: str
    block_b: str
    lhs: float
    rhs: float
    violated: bool


# blocks sharing a measurement: (block, block, which outcome label side)
_MARGINAL_PAIRINGS = (
    ("AB", "ABp", "first"),
    ("ApB", "ApBp", "first"),
    ("AB", "ApB", "second"),
    ("ABp", "ApBp", "second"),
)


def marginal_law_check(
    table: CoincidenceTable, tolerance: float = 0.01
) -> tuple[MarginalComparison, ...]:
    """Compare each shared single-measurement marginal across block pairs.

    For the blocks sharing the A-side measurement (AB vs ABp, ApB vs ApBp)
    each first-factor label's summed probability must agree, and likewise
    for the B-side (second-factor) labels; 2 labels per side gives 8
    comparisons.  Disagreement beyond ``tolerance`` marks a violation.
    """
    comparisons = []
    for block_a, block_b, side in _MARGINAL_PAIRINGS:
        labels_a = _side_labels(table, block_a, side)
        labels_b = _side_labels(table, block_b, side)
        if set(labels_a) != set(labels_b):
            raise SchemaError(
                f"blocks {block_a} and {block_b} do not share {side}-side labels: "
                f"{sorted(labels_a)} vs {sorted(labels_b)}"
            )
        for label in labels_a:
            lhs = _marginal_sum(table, block_a, side, label)
            rhs = _marginal_sum(table, block_b, side, label)
            comparisons.append(
                MarginalComparison(
                    label=label,
                    block_a=block_a,
                    block_b=block_b,
                    lhs=lhs,
                    rhs=rhs,
                    violated=abs(lhs - rhs) > tolerance,
                )
            )
    return tuple(comparisons)


def _side_labels(table: CoincidenceTable, block: str, side: str) -> list[str]:
    labels = []
    for outcome in table.block(block):
        label = getattr(outcome, side)
        if label not in labels:
            labels.append(label)
    return labels


def _marginal_sum(table: CoincidenceTable, block: str, side: str, label: str) -> float:
    return sum(o.p for o in table.block(block) if getattr(o, side) == label)


@dataclass(frozen=True)
class SchmidtReport:
    singular_values: tuple[float, float]
    rank: int


def state_schmidt(state: ComplexVector4, tol: float = 1e-6) -> SchmidtReport:
    """Schmidt decomposition of the state across the two factors.

    Rank 2 (both singular values above ``tol``) means the state is
    entangled; rank 1 means it is a product state.
    """
    matrix = state.vector().reshape(2, 2)
    singular = np.linalg.svd(matrix, compute_uv=False)
    rank = int(np.sum(singular > tol))
    return SchmidtReport(
        singular_values=(float(singular[0]), float(singular[1])), rank=rank
    )


def realign(matrix: np.ndarray) -> np.ndarray:
    """Reindex M[(i,j),(k,l)] as R[(i,k),(j,l)].

    Tensor products A (x) B realign to the rank-1 outer product
    vec(A) vec(B)^T, so the singular values of R are the operator-Schmidt
    coefficients of M.
    """
    matrix = np.asarray(matrix, dtype=complex)
    return matrix.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


@dataclass(frozen=True)
class OperatorSchmidt:
    coefficients: tuple[float, float, float, float]  # descending
    product: bool
    nearest_product_error: float


def operator_product_test(
    obs: Observable4 | np.ndarray, rel_tol: float = 1e-6
) -> OperatorSchmidt:
    """Operator-Schmidt coefficients and product/entangled classification.

    ``product`` iff exactly one coefficient exceeds ``rel_tol`` times the
    largest; ``nearest_product_error`` is the Frobenius distance to the
    best product (rank-1) approximation.
    """
    matrix = obs.matrix if isinstance(obs, Observable4) else np.asarray(obs, dtype=complex)
    if matrix.shape != (4, 4):
        raise DataValidationError(f"observable must be 4x4, got {matrix.shape}")
    singular = np.linalg.svd(realign(matrix), compute_uv=False)
    threshold = rel_tol * float(singular[0]) if singular[0] > 0.0 else 0.0
    significant = int(np.sum(singular > threshold))
    return OperatorSchmidt(
        coefficients=tuple(float(s) for s in singular),
        product=significant <= 1,
        nearest_product_error=float(math.sqrt(float(np.sum(singular[1:] ** 2)))),
    )


@dataclass(frozen=True, eq=False)
class HilbertModel:
    """A C^4 state plus the four block observables, unvalidated.

    Validation happens in ``verify_reference_model`` so that defective
    models produce a named check failure instead of a parse error.
    """

    state: tuple[complex, complex, complex, complex]
    operators: Mapping[str, np.ndarray]

    def __post_init__(self):
        state = tuple(complex(a) for a in self.state)
        if len(state) != 4:
            raise DataValidationError(f"state needs 4 amplitudes, got {len(state)}")
        object.__setattr__(self, "state", state)
        operators = {}
        for key in BLOCKS:
            if key not in self.operators:
                raise SchemaError(f"model missing operator for block {key}")
            matrix = np.array(self.operators[key], dtype=complex)
            if matrix.shape != (4, 4):
                raise DataValidationError(f"operator {key} must be 4x4, got {matrix.shape}")
            matrix.flags.writeable = False
            operators[key] = matrix
        object.__setattr__(self, "operators", operators)


def _parse_complex(value, context: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, dict):
        if {"re", "im"} <= set(value):
            return complex(float(value["re"]), float(value["im"]))
        if {"mod", "argDeg"} <= set(value):
            arg = math.radians(float(value["argDeg"]))
            return complex(
                float(value["mod"]) * math.cos(arg), float(value["mod"]) * math.sin(arg)
            )
    raise SchemaError(
        f"{context}: complex numbers must be a number, {{re, im}}, or {{mod, argDeg}}"
    )


def parse_model(source: bytes | str | IO[bytes] | IO[str]) -> HilbertModel:
    """Parse a model file: {"state": [complex x4], "operators": {block: 4x4}}."""
    doc = _load_json(_read_text(source), "hilbert model")
    if not isinstance(doc, dict) or "state" not in doc or "operators" not in doc:
        raise SchemaError("hilbert model: expected object with keys state/operators")
    state_doc = doc["state"]
    if not isinstance(state_doc, list) or len(state_doc) != 4:
        raise SchemaError("hilbert model: state must be a list of 4 complex numbers")
    state = tuple(_parse_complex(v, f"state[{i}]") for i, v in enumerate(state_doc))
    operators_doc = doc["operators"]
    if not isinstance(operators_doc, dict):
        raise SchemaError("hilbert model: operators must be an object")
    operators = {}
    for key, rows in operators_doc.items():
        if key not in BLOCKS:
            raise SchemaError(f"hilbert model: unknown operator key {key!r}")
        if not isinstance(rows, list) or len(rows) != 4 or any(
            not isinstance(row, list) or len(row) != 4 for row in rows
        ):
            raise SchemaError(f"operator {key}: expected 4 rows of 4 entries")
        operators[key] = np.array(
            [
                [_parse_complex(v, f"operator {key}[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(rows)
            ],
            dtype=complex,
        )
    return HilbertModel(state=state, operators=operators)


@dataclass(frozen=True)
class VerifyTolerances:
    hermitian: float = 1e-3
    eigenvalue: float = 0.05
    trace: float = 0.05
    expectation: float = 0.02
    schmidt: float = 1e-6
    marginal: float = 0.01
    state_norm: float = 1e-3


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ModelVerificationReport:
    checks: tuple[CheckItem, ...]
    all_passed: bool
    classification: str | None
    chsh: ChshReport

    def check(self, name: str) -> CheckItem:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(f"no check named {name!r}")


def verify_reference_model(
    model: HilbertModel,
    table: CoincidenceTable,
    tolerances: VerifyTolerances = VerifyTolerances(),
) -> ModelVerificationReport:
    """Run every model check against the observed coincidence table.

    Checks: per-operator invariants, expectation match against the table,
    state entanglement (Schmidt rank 2), operator entanglement (all four
    non-product), and the box classification.  The classification string
    is emitted when the CHSH value exceeds the classical bound while
    respecting the Tsirelson bound and ANY shared marginal is violated.
    Sub-check failures are listed in the report; nothing throws.
    """
    checks: list[CheckItem] = []
    report = expectations_from_table(table)
    table_e = report.expectations()

    try:
        state = ComplexVector4(model.state, is_state=True, norm_tol=tolerances.state_norm)
        norm = math.sqrt(sum(abs(a) ** 2 for a in model.state))
        checks.append(CheckItem("state.norm", True, f"norm = {norm:.6f}"))
    except DataValidationError as exc:
        state = ComplexVector4(model.state, is_state=False)
        checks.append(CheckItem("state.norm", False, str(exc)))

    for key in BLOCKS:
        matrix = model.operators[key]
        try:
            Observable4(
                matrix,
                hermitian_tol=tolerances.hermitian,
                eigenvalue_tol=tolerances.eigenvalue,
                trace_tol=tolerances.trace,
            )
            checks.append(CheckItem(f"observable[{key}].invariants", True, "Hermitian, spectrum ~ {+1,+1,-1,-1}, trace ~ 0"))
        except DataValidationError as exc:
            checks.append(CheckItem(f"observable[{key}].invariants", False, str(exc)))

    for key in BLOCKS:
        matrix = model.operators[key]
        hermitized = (matrix + matrix.conj().T) / 2.0
        vec = state.vector()
        raw = complex(np.vdot(vec, hermitized @ vec))
        difference = abs(raw.real - table_e[key])
        checks.append(
            CheckItem(
                f"expectation[{key}]",
                difference <= tolerances.expectation,
                f"<p|E|p> = {raw.real:.4f} vs table {table_e[key]:.4f} "
                f"(|diff| = {difference:.4f})",
            )
        )

    schmidt = state_schmidt(state, tol=tolerances.schmidt)
    checks.append(
        CheckItem(
            "state.schmidt_rank",
            schmidt.rank == 2,
            f"singular values {schmidt.singular_values[0]:.4f}, "
            f"{schmidt.singular_values[1]:.4f} -> rank {schmidt.rank}",
        )
    )

    for key in BLOCKS:
        result = operator_product_test(model.operators[key])
        checks.append(
            CheckItem(
                f"operator[{key}].entangled",
                not result.product,
                f"schmidt coefficients {tuple(round(c, 4) for c in result.coefficients)}",
            )
        )

    marginals = marginal_law_check(table, tolerance=tolerances.marginal)
    any_marginal_violated = any(m.violated for m in marginals)
    box_condition = (
        report.classical_violated and report.tsirelson_respected and any_marginal_violated
    )
    classification = NONLOCAL_NON_MARGINAL_BOX_1 if box_condition else None
    checks.append(
        CheckItem(
            "box_classification",
            box_condition,
            f"CHSH = {report.chsh:.4f}, classical violated = {report.classical_violated}, "
            f"tsirelson respected = {report.tsirelson_respected}, "
            f"marginal violations = {sum(m.violated for m in marginals)}/{len(marginals)}",
        )
    )

    return ModelVerificationReport(
        checks=tuple(checks),
        all_passed=all(item.passed for item in checks),
        classification=classification,
        chsh=report,
    )

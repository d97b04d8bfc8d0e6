"""Integer-programming form of the isolation problem, for external MIP solvers.

Variables: one binary ``v_<id>`` per device (1 = isolate it) and one binary
``u_<i>_<j>`` per unordered device pair (1 = the pair is connected in the
residual network).  Constraints couple edges to pair variables, make
connectivity transitive over triples, and cap the cut size at the budget.

The pair variables only *upper-bound* real connectivity: nothing forces a
solver to set ``u`` to 0 on a disconnected healthy pair, and the objective
rewards healthy ``u = 1``.  Two guards close this: strengthening rows pin
``u_ij = 0`` whenever an endpoint is cut, and certification recomputes the
true score from the ``v`` variables alone, reporting any objective gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Mapping, Optional

from .graph import (
    AttackSet,
    Graph,
    ScoreReport,
    _require_attacked_in_graph,
    components,
    remove_devices,
    score,
)


class IlpMode(Enum):
    LEXICOGRAPHIC = "lexicographic"  # weighted vulnerability minus healthiness
    VULNERABILITY_ONLY = "vulnerability_only"  # classical critical-node objective


def node_var(device_id: int) -> str:
    return f"v_{device_id}"


def pair_var(u: int, v: int) -> str:
    if u == v:
        raise ValueError("pair variables are defined on distinct devices")
    return f"u_{min(u, v)}_{max(u, v)}"


@dataclass(frozen=True)
class LinearRow:
    """One constraint: sum(coeff * var) <sense> rhs."""

    name: str
    coeffs: tuple[tuple[str, int], ...]
    sense: str  # "<=" or ">="
    rhs: int

    def lhs_value(self, values: Mapping[str, int]) -> int:
        return sum(c * values[v] for v, c in self.coeffs)

    def satisfied_by(self, values: Mapping[str, int]) -> bool:
        lhs = self.lhs_value(values)
        return lhs <= self.rhs if self.sense == "<=" else lhs >= self.rhs


@dataclass(frozen=True)
class IlpModel:
    """The full model in data form, ready for text export or validation."""

    mode: IlpMode
    budget_k: int
    multiplier_base: int
    node_vars: tuple[str, ...]
    pair_vars: tuple[str, ...]
    constraints: tuple[LinearRow, ...]
    objective: tuple[tuple[str, int], ...]  # minimize


@dataclass(frozen=True)
class Assignment:
    """Variable values proposed by an external solver, keyed by variable name."""

    node_values: Mapping[str, int]
    pair_values: Optional[Mapping[str, int]] = None


@dataclass(frozen=True)
class ConstraintViolation:
    row: str
    lhs: int
    sense: str
    rhs: int


@dataclass(frozen=True)
class ValidationReport:
    """Constraint check plus an independent rescore of the implied cut."""

    violated_constraints: tuple[ConstraintViolation, ...]
    implied_cut: frozenset[int]
    recomputed: ScoreReport
    objective_value: int
    objective_gap: int

    @property
    def certified(self) -> bool:
        return not self.violated_constraints and self.objective_gap == 0


def build_model(g: Graph, a: AttackSet, k: int, mode: IlpMode = IlpMode.LEXICOGRAPHIC) -> IlpModel:
    """Assemble variables, constraint rows, and the objective for one instance.

    Row order (and therefore row naming c1..cm) is: budget, two coupling
    rows per connection, three transitivity rows per device triple, then
    two strengthening rows per pair.
    """
    _require_attacked_in_graph(g, a)
    if k < 0:
        raise ValueError("budget k must be non-negative")

    ids = sorted(g.device_ids)
    n = len(ids)
    pairs = list(combinations(ids, 2))
    nodes = tuple(node_var(i) for i in ids)
    pvars = tuple(pair_var(i, j) for i, j in pairs)

    rows: list[LinearRow] = []

    def add(coeffs: tuple[tuple[str, int], ...], sense: str, rhs: int) -> None:
        rows.append(LinearRow(f"c{len(rows) + 1}", coeffs, sense, rhs))

    add(tuple((node_var(i), 1) for i in ids), "<=", k)

    for u, v in sorted(g.connections):
        coeffs = ((node_var(u), 1), (node_var(v), 1), (pair_var(u, v), 2))
        # Cutting either endpoint forces the pair variable to 0 ...
        add(coeffs, "<=", 2)
        # ... and keeping both forces it to 1 (the pair is directly connected).
        add(coeffs, ">=", 1)

    for i, j, l in combinations(ids, 3):
        uij, ujl, uil = pair_var(i, j), pair_var(j, l), pair_var(i, l)
        add(((uij, 1), (ujl, 1), (uil, -1)), "<=", 1)
        add(((uij, 1), (ujl, -1), (uil, 1)), "<=", 1)
        add(((uij, -1), (ujl, 1), (uil, 1)), "<=", 1)

    for i, j in pairs:
        add(((node_var(i), 1), (pair_var(i, j), 1)), "<=", 1)
        add(((node_var(j), 1), (pair_var(i, j), 1)), "<=", 1)

    multiplier = n**2 + 1
    objective: list[tuple[str, int]] = []
    for i, j in pairs:
        vulnerable = i in a.attacked or j in a.attacked
        if vulnerable:
            objective.append((pair_var(i, j), multiplier if mode is IlpMode.LEXICOGRAPHIC else 1))
        elif mode is IlpMode.LEXICOGRAPHIC:
            objective.append((pair_var(i, j), -1))

    return IlpModel(
        mode=mode,
        budget_k=k,
        multiplier_base=n,
        node_vars=nodes,
        pair_vars=pvars,
        constraints=tuple(rows),
        objective=tuple(objective),
    )


def _format_terms(coeffs: tuple[tuple[str, int], ...]) -> list[str]:
    """Render coefficient terms the LP way: "v_1", "- v_2", "5 u_1_2"."""
    parts: list[str] = []
    for idx, (var, coeff) in enumerate(coeffs):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = var if mag == 1 else f"{mag} {var}"
        if not parts:
            parts.append(body if coeff > 0 else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return parts


def _wrap(prefix: str, parts: list[str], width: int = 72) -> list[str]:
    lines = [prefix]
    for part in parts:
        if len(lines[-1]) + 1 + len(part) > width and lines[-1] != " ":
            lines.append(" ")
        lines[-1] = f"{lines[-1]} {part}" if lines[-1] != " " else f" {part}"
    return lines


def emit_lp(model: IlpModel) -> str:
    """Serialize the model in the standard LP text format, byte-deterministic."""
    out: list[str] = ["Minimize"]
    terms = _format_terms(model.objective)
    if not terms:
        # A constant objective still needs one term for strict parsers.
        anchor = model.node_vars[0] if model.node_vars else "x0"
        terms = [f"0 {anchor}"]
    out.extend(_wrap(" obj:", terms))
    out.append("Subject To")
    for row in model.constraints:
        parts = _format_terms(row.coeffs) + [row.sense, str(row.rhs)]
        out.extend(_wrap(f" {row.name}:", parts))
    out.append("Binary")
    for name in model.node_vars:
        out.append(f" {name}")
    for name in model.pair_vars:
        out.append(f" {name}")
    out.append("End")
    return "\n".join(out) + "\n"


def parse_assignment(text: str) -> Assignment:
    """Read a "name value" per-line solution file.

    Blank lines and '#' comments are skipped.  Values may be integers or
    solver-style floats close to 0/1.  Pair variables may be omitted.
    """
    node_values: dict[str, int] = {}
    pair_values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'name value', got {raw!r}")
        name, value_text = fields
        try:
            value_f = float(value_text)
        except ValueError:
            raise ValueError(f"line {lineno}: bad value {value_text!r}") from None
        value = round(value_f)
        if value not in (0, 1) or abs(value_f - value) > 1e-6:
            raise ValueError(f"line {lineno}: value {value_text!r} is not binary")
        if name.startswith("v_"):
            node_values[name] = value
        elif name.startswith("u_"):
            pair_values[name] = value
        else:
            raise ValueError(f"line {lineno}: unknown variable kind {name!r}")
    return Assignment(node_values=node_values, pair_values=pair_values or None)


def _derive_pair_values(g: Graph, cut: frozenset[int]) -> dict[str, int]:
    """True residual connectivity for every pair variable of the full network."""
    residual = remove_devices(g, cut)
    comp_of: dict[int, int] = {}
    for label, (members, _) in enumerate(components(residual, AttackSet())):
        for m in members:
            comp_of[m] = label
    values: dict[str, int] = {}
    for i, j in combinations(sorted(g.device_ids), 2):
        connected = i in comp_of and j in comp_of and comp_of[i] == comp_of[j]
        values[pair_var(i, j)] = 1 if connected else 0
    return values


def validate_assignment(
    model: IlpModel, asg: Assignment, g: Graph, a: AttackSet
) -> ValidationReport:
    """Check every constraint row and recompute the score from the cut itself.

    Pair values missing from the assignment are filled in with the true
    connectivity of the residual network, so a solver only has to report
    the ``v`` variables.  The objective gap compares the model's objective
    value on the (completed) assignment against the independently
    recomputed score; a certified solution has no violations and gap 0.
    """
    _require_attacked_in_graph(g, a)

    known = set(model.node_vars) | set(model.pair_vars)
    for name in asg.node_values:
        if name not in known:
            raise ValueError(f"assignment references unknown variable {name!r}")
    missing = [name for name in model.node_vars if name not in asg.node_values]
    if missing:
        raise ValueError(f"assignment is missing node variables: {missing[:5]}")
    if asg.pair_values:
        for name in asg.pair_values:
            if name not in known:
                raise ValueError(f"assignment references unknown variable {name!r}")

    cut = frozenset(
        int(name.split("_", 1)[1])
        for name in model.node_vars
        if asg.node_values[name] == 1
    )
    values: dict[str, int] = dict(_derive_pair_values(g, cut))
    if asg.pair_values:
        values.update(asg.pair_values)
    values.update({name: asg.node_values[name] for name in model.node_vars})

    violations = tuple(
        ConstraintViolation(row.name, row.lhs_value(values), row.sense, row.rhs)
        for row in model.constraints
        if not row.satisfied_by(values)
    )

    recomputed = score(
        remove_devices(g, cut),
        AttackSet(a.attacked - cut),
        multiplier_base=g.device_count,
    )
    objective_value = sum(coeff * values[var] for var, coeff in model.objective)
    target = (
        recomputed.phi
        if model.mode is IlpMode.LEXICOGRAPHIC
        else recomputed.vulnerability
    )
    return ValidationReport(
        violated_constraints=violations,
        implied_cut=cut,
        recomputed=recomputed,
        objective_value=objective_value,
        objective_gap=objective_value - target,
    )

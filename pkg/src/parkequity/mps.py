"""Free-format MPS export and import for ``MipModel``.

Binary columns are wrapped in ``INTORG``/``INTEND`` markers and given an
explicit ``UP`` bound of 1. Numbers are written with 17 significant digits,
enough for every double to survive a write/read cycle unchanged. A column
with no nonzero anywhere gets an explicit zero objective entry so that it
is not lost.
"""

from __future__ import annotations

import math
from pathlib import Path

from .milp import MipModel, ModelBuilder, Sense, Variable, VarKind

__all__ = ["MpsError", "write_mps", "read_mps", "format_mps", "parse_mps"]

OBJ_ROW = "OBJ"
_SENSE_CODE = {Sense.LE: "L", Sense.EQ: "E", Sense.GE: "G"}
_CODE_SENSE = {v: k for k, v in _SENSE_CODE.items()}


class MpsError(ValueError):
    pass


def _num(value: float) -> str:
    return f"{value:.17g}"


def format_mps(model: MipModel) -> str:
    lines = [f"NAME {model.name}", "ROWS", f" N {OBJ_ROW}"]
    for row in model.constraints:
        if row.name == OBJ_ROW:
            raise MpsError(f"constraint name {OBJ_ROW!r} is reserved for the objective")
        lines.append(f" {_SENSE_CODE[row.sense]} {row.name}")

    entries: dict[str, list[tuple[str, float]]] = {v.name: [] for v in model.variables}
    for var, coef in model.objective:
        entries[var].append((OBJ_ROW, coef))
    for row in model.constraints:
        for var, coef in row.coeffs:
            entries[var].append((row.name, coef))

    lines.append("COLUMNS")
    in_int = False
    marker = 0
    for var in model.variables:
        is_int = var.kind is VarKind.BINARY
        if is_int != in_int:
            tag = "INTORG" if is_int else "INTEND"
            lines.append(f"    MARKER{marker} 'MARKER' '{tag}'")
            marker += 1
            in_int = is_int
        col = entries[var.name] or [(OBJ_ROW, 0.0)]
        for row_name, coef in col:
            lines.append(f"    {var.name} {row_name} {_num(coef)}")
    if in_int:
        lines.append(f"    MARKER{marker} 'MARKER' 'INTEND'")

    lines.append("RHS")
    if model.objective_constant != 0.0:
        # Solvers read an objective-row RHS as the negated constant.
        lines.append(f"    RHS {OBJ_ROW} {_num(-model.objective_constant)}")
    for row in model.constraints:
        if row.rhs != 0.0:
            lines.append(f"    RHS {row.name} {_num(row.rhs)}")

    lines.append("BOUNDS")
    for var in model.variables:
        lines.extend(_bound_lines(var))
    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def _bound_lines(var: Variable) -> list[str]:
    name = var.name
    if var.kind is VarKind.BINARY:
        if (var.lb, var.ub) != (0.0, 1.0):
            raise MpsError(f"binary {name} must have bounds [0, 1]")
        return [f" UP BND {name} 1"]
    lb, ub = var.lb, var.ub
    if lb == ub:
        return [f" FX BND {name} {_num(lb)}"]
    if lb == -math.inf and ub == math.inf:
        return [f" FR BND {name}"]
    out = []
    if lb == -math.inf:
        out.append(f" MI BND {name}")
    elif lb != 0.0:
        out.append(f" LO BND {name} {_num(lb)}")
    if ub != math.inf:
        out.append(f" UP BND {name} {_num(ub)}")
    return out


def write_mps(model: MipModel, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_mps(model), encoding="ascii")
    return path


def parse_mps(text: str) -> MipModel:
    """Parse free-format MPS as produced by ``format_mps``.

    Only the subset needed for ``MipModel`` is supported: one objective row,
    L/E/G rows, integer columns with bounds [0, 1], and LO/UP/FX/FR/MI
    bounds. RANGES and general integers are rejected.
    """
    name = "model"
    section = None
    row_order: list[str] = []
    row_sense: dict[str, Sense] = {}
    obj_row: str | None = None
    columns: dict[str, list[tuple[str, float]]] = {}
    col_order: list[str] = []
    col_int: dict[str, bool] = {}
    rhs: dict[str, float] = {}
    bounds: dict[str, list[float]] = {}
    in_int = False

    def number(tok: str, lineno: int) -> float:
        try:
            return float(tok)
        except ValueError:
            raise MpsError(f"line {lineno}: bad number {tok!r}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("*"):
            continue
        tokens = raw.split()
        if not raw[0].isspace():
            head = tokens[0].upper()
            if head == "NAME":
                name = tokens[1] if len(tokens) > 1 else ""
                continue
            if head == "ENDATA":
                break
            if head in ("ROWS", "COLUMNS", "RHS", "BOUNDS"):
                section = head
                continue
            raise MpsError(f"line {lineno}: unsupported section {tokens[0]!r}")

        if section == "ROWS":
            code, rname = tokens[0].upper(), tokens[1]
            if code == "N":
                if obj_row is not None:
                    raise MpsError(f"line {lineno}: more than one objective row")
                obj_row = rname
                continue
            if code not in _CODE_SENSE:
                raise MpsError(f"line {lineno}: unknown row type {code!r}")
            if rname in row_sense:
                raise MpsError(f"line {lineno}: duplicate row {rname!r}")
            row_order.append(rname)
            row_sense[rname] = _CODE_SENSE[code]
        elif section == "COLUMNS":
            if len(tokens) >= 3 and tokens[1] == "'MARKER'":
                tag = tokens[2].strip("'").upper()
                if tag == "INTORG":
                    in_int = True
                elif tag == "INTEND":
                    in_int = False
                else:
                    raise MpsError(f"line {lineno}: unknown marker {tokens[2]!r}")
                continue
            col = tokens[0]
            if col not in columns:
                columns[col] = []
                col_order.append(col)
                col_int[col] = in_int
            pairs = tokens[1:]
            if len(pairs) not in (2, 4):
                raise MpsError(f"line {lineno}: malformed COLUMNS record")
            for i in range(0, len(pairs), 2):
                rname = pairs[i]
                if rname != obj_row and rname not in row_sense:
                    raise MpsError(f"line {lineno}: unknown row {rname!r}")
                columns[col].append((rname, number(pairs[i + 1], lineno)))
        elif section == "RHS":
            pairs = tokens[1:]
            if len(pairs) not in (2, 4):
                raise MpsError(f"line {lineno}: malformed RHS record")
            for i in range(0, len(pairs), 2):
                rname = pairs[i]
                if rname != obj_row and rname not in row_sense:
                    raise MpsError(f"line {lineno}: unknown row {rname!r}")
                rhs[rname] = number(pairs[i + 1], lineno)
        elif section == "BOUNDS":
            code, col = tokens[0].upper(), tokens[2]
            if col not in columns:
                raise MpsError(f"line {lineno}: bound on unknown column {col!r}")
            lb_ub = bounds.setdefault(col, [0.0, math.inf])
            value = number(tokens[3], lineno) if len(tokens) > 3 else None
            if code == "UP":
                lb_ub[1] = value
            elif code == "LO":
                lb_ub[0] = value
            elif code == "FX":
                lb_ub[0] = lb_ub[1] = value
            elif code == "FR":
                lb_ub[0], lb_ub[1] = -math.inf, math.inf
            elif code == "MI":
                lb_ub[0] = -math.inf
            elif code == "BV":
                lb_ub[0], lb_ub[1] = 0.0, 1.0
            else:
                raise MpsError(f"line {lineno}: unsupported bound type {code!r}")
        else:
            raise MpsError(f"line {lineno}: data outside a section")

    builder = ModelBuilder(name)
    for col in col_order:
        lb, ub = bounds.get(col, [0.0, math.inf])
        if col_int[col]:
            if (lb, ub) != (0.0, 1.0):
                raise MpsError(f"integer column {col} has bounds [{lb}, {ub}]; only binaries are supported")
            builder.add_var(col, VarKind.BINARY)
        else:
            builder.add_var(col, VarKind.CONTINUOUS, lb, ub)
    row_terms: dict[str, list[tuple[str, float]]] = {r: [] for r in row_order}
    objective = []
    for col in col_order:
        for rname, coef in columns[col]:
            if rname == obj_row:
                objective.append((col, coef))
            else:
                row_terms[rname].append((col, coef))
    for rname in row_order:
        builder.add_constraint(rname, row_terms[rname], row_sense[rname], rhs.get(rname, 0.0))
    constant = -rhs[obj_row] if obj_row in rhs else 0.0
    builder.set_objective(objective, constant)
    return builder.build()


def read_mps(path: str | Path) -> MipModel:
    return parse_mps(Path(path).read_text(encoding="ascii"))

"""
Circuit Serialization

JSON import/export of a circuit together with its extraction result, and
rendering of the probabilistic model as standalone Python source.
"""

import json
from typing import Any, Dict, List, Tuple

from ..extraction.extractor import (
    Definition,
    ExtractionResult,
    ExtractionStats,
    OutputTarget,
)
from ..logic.decompose import GateKind
from ..logic.expr import ExpressionError, from_json_obj, to_infix, to_json_obj
from .netlist import Circuit, CircuitError, GateNode


SCHEMA_VERSION = 1


def export_json(circuit: Circuit, result: ExtractionResult, indent: int = 2) -> str:
    """
    Serialize a circuit and the extraction it was built from.

    The top-level keys `num_vars`, `aux_base`, `inputs`, `outputs` and
    `gates` describe the netlist; `var_nodes` and `extraction` make the
    round trip lossless.
    """
    document = {
        "version": SCHEMA_VERSION,
        "num_vars": circuit.num_vars,
        "aux_base": circuit.aux_base,
        "inputs": circuit.input_vars,
        "outputs": [
            {"var": var, "target": target}
            for var, (_, target) in circuit.output_index.items()
        ],
        "gates": [
            {"id": n.id, "kind": n.kind.value, "args": list(n.args), "var": n.var}
            for n in circuit.nodes
        ],
        "var_nodes": {str(var): node for var, node in circuit.var_nodes.items()},
        "extraction": {
            "pi": result.pi,
            "iv": result.iv,
            "po": [{"var": o.var, "target": o.target} for o in result.po],
            "aux": result.aux,
            "be": [
                {
                    "var": d.var,
                    "aux": d.aux,
                    "expr": to_json_obj(d.expr),
                    "infix": to_infix(d.expr, top_level=True),
                }
                for d in result.be
            ],
            "unsat_reason": result.unsat_reason,
            "stats": result.stats.to_dict(),
        },
    }
    return json.dumps(document, indent=indent)


def _require(document: Dict[str, Any], key: str, kind: type) -> Any:
    if key not in document:
        raise CircuitError(f"Circuit JSON is missing '{key}'")
    value = document[key]
    if not isinstance(value, kind):
        raise CircuitError(f"Circuit JSON field '{key}' has the wrong type")
    return value


def import_json(text: str) -> Tuple[Circuit, ExtractionResult]:
    """
    Rebuild a circuit and its extraction result from `export_json` output.

    Raises:
        CircuitError: On invalid JSON or a schema violation.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitError(f"Invalid circuit JSON: {e}")
    if not isinstance(document, dict):
        raise CircuitError("Circuit JSON must be an object")

    circuit = Circuit(
        num_vars=_require(document, "num_vars", int),
        aux_base=_require(document, "aux_base", int),
    )
    try:
        for gate in _require(document, "gates", list):
            circuit.nodes.append(GateNode(
                id=int(gate["id"]),
                kind=GateKind(gate["kind"]),
                args=tuple(int(a) for a in gate["args"]),
                var=None if gate.get("var") is None else int(gate["var"]),
            ))
        for var in _require(document, "inputs", list):
            matches = [n.id for n in circuit.nodes if n.kind is GateKind.INPUT and n.var == var]
            if not matches:
                raise CircuitError(f"Input x{var} has no INPUT gate")
            circuit.input_index[int(var)] = matches[0]
        for var, node in _require(document, "var_nodes", dict).items():
            circuit.var_nodes[int(var)] = int(node)
        for out in _require(document, "outputs", list):
            var = int(out["var"])
            if var not in circuit.var_nodes:
                raise CircuitError(f"Output x{var} has no driver")
            circuit.output_index[var] = (circuit.var_nodes[var], int(out["target"]))
    except (KeyError, TypeError, ValueError) as e:
        raise CircuitError(f"Malformed gate section: {e}")
    circuit.validate()

    extraction = _require(document, "extraction", dict)
    try:
        result = ExtractionResult(
            num_vars=circuit.num_vars,
            pi=[int(v) for v in extraction["pi"]],
            iv=[int(v) for v in extraction["iv"]],
            po=[OutputTarget(int(o["var"]), int(o["target"])) for o in extraction["po"]],
            be=[
                Definition(int(d["var"]), from_json_obj(d["expr"]), bool(d["aux"]))
                for d in extraction["be"]
            ],
            aux=[int(v) for v in extraction["aux"]],
            unsat_reason=extraction.get("unsat_reason"),
            stats=ExtractionStats(**extraction.get("stats", {})),
        )
    except (KeyError, TypeError, ValueError, ExpressionError) as e:
        raise CircuitError(f"Malformed extraction section: {e}")
    return circuit, result


_PROBABILISTIC_FORMULAS = {
    GateKind.NOT: "1.0 - {a}",
    GateKind.AND2: "{a} * {b}",
    GateKind.OR2: "1.0 - (1.0 - {a}) * (1.0 - {b})",
    GateKind.XOR2: "(1.0 - {a}) * {b} + {a} * (1.0 - {b})",
    GateKind.XNOR2: "{a} * {b} + (1.0 - {a}) * (1.0 - {b})",
}


def render_python_model(circuit: Circuit, result: ExtractionResult) -> str:
    """
    Render the probabilistic forward function as Python source.

    The generated module defines INPUTS, OUTPUTS (var, target) pairs and
    `forward(inputs)`, which maps a dict of input probabilities (scalars or
    numpy arrays) to a dict of output probabilities.
    """
    names = {var: f"x{var}" for var in circuit.var_nodes}
    lines: List[str] = [
        '"""Probabilistic circuit model generated by sat-circuit-sampler."""',
        "",
        "import numpy as np",
        "",
        f"INPUTS = {circuit.input_vars}",
        f"OUTPUTS = {[(var, target) for var, (_, target) in circuit.output_index.items()]}",
        "",
        "",
        "def forward(inputs):",
        '    """Map input probabilities {var: P} to output probabilities {var: P}."""',
    ]
    definitions = result.definitions()
    for node in circuit.nodes:
        target = f"n{node.id}"
        if node.kind is GateKind.INPUT:
            lines.append(f"    {target} = np.asarray(inputs[{node.var}], dtype=float)")
            continue
        if node.kind in (GateKind.CONST0, GateKind.CONST1):
            value = "1.0" if node.kind is GateKind.CONST1 else "0.0"
            line = f"    {target} = {value}"
        else:
            operands = {"a": f"n{node.args[0]}"}
            if len(node.args) > 1:
                operands["b"] = f"n{node.args[1]}"
            line = f"    {target} = " + _PROBABILISTIC_FORMULAS[node.kind].format(**operands)
        if node.var is not None and node.var in definitions:
            line += f"  # {names[node.var]} = {to_infix(definitions[node.var], top_level=True)}"
        lines.append(line)
    outputs = ", ".join(
        f"{var}: n{node_id}" for var, (node_id, _) in circuit.output_index.items()
    )
    lines.append(f"    return {{{outputs}}}")
    return "\n".join(lines) + "\n"

"""
Model file format

Line oriented, one field per line, blank lines and '#' comments ignored:

    worlds: 0 1
    rel: 0->0 1->1 0->1
    val: p0@1
    root: 0

The optional root line names a designated world. No closure is applied on
load: a model that breaks a frame law is rejected with the violation.
"""
import re
from pathlib import Path
from typing import Optional, Tuple, Union

from pydantic import ValidationError

from src.config.logging_config import get_logger
from src.models.Kripke_Model import KripkeModel
from src.services.semantics_service import validate_frame
from src.utils.errors import ModelFileError

# Get logger for this module
logger = get_logger(__name__)

_LINE = re.compile(r"^\s*(worlds|rel|val|root)\s*:(.*)$")
_EDGE = re.compile(r"^(\d+)->(\d+)$")
_VAL = re.compile(r"^p(\d+)@(\d+)$")


def parse_model_text(text: str) -> Tuple[KripkeModel, Optional[int]]:
    """
    Parse model file text into a model and its optional root

    Raises:
        ModelFileError: unknown line, bad item, unknown world or a frame law
            violation (the verdict is attached)
    """
    fields = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = _LINE.match(stripped)
        if match is None:
            raise ModelFileError(f"line {number}: expected worlds:, rel:, val: or root:")
        key, rest = match.group(1), match.group(2).split()
        if key in fields:
            raise ModelFileError(f"line {number}: duplicate '{key}' line")
        fields[key] = (number, rest)

    if "worlds" not in fields:
        raise ModelFileError("missing 'worlds:' line")

    try:
        worlds = tuple(int(item) for item in fields["worlds"][1])
        rel = set()
        for item in fields.get("rel", (0, []))[1]:
            edge = _EDGE.match(item)
            if edge is None:
                raise ModelFileError(f"line {fields['rel'][0]}: bad edge '{item}'")
            rel.add((int(edge.group(1)), int(edge.group(2))))
        val = set()
        for item in fields.get("val", (0, []))[1]:
            entry = _VAL.match(item)
            if entry is None:
                raise ModelFileError(f"line {fields['val'][0]}: bad valuation '{item}'")
            val.add((int(entry.group(1)), int(entry.group(2))))
        root = None
        if "root" in fields:
            (root_text,) = fields["root"][1] or ("",)
            root = int(root_text)
    except ValueError as e:
        raise ModelFileError(f"bad model file: {e}") from None

    try:
        model = KripkeModel(worlds=worlds, rel=frozenset(rel), val=frozenset(val))
    except ValidationError as e:
        raise ModelFileError(f"bad model file: {e.errors()[0]['msg']}") from None

    verdict = validate_frame(model)
    if not verdict.ok:
        logger.warning(f"Model file rejected: {verdict.describe()}")
        raise ModelFileError(f"model breaks a frame law: {verdict.describe()}", verdict)
    if root is not None and root not in model.worlds:
        raise ModelFileError(f"root {root} is not a world")
    return model, root


def load_model(path: Union[str, Path]) -> Tuple[KripkeModel, Optional[int]]:
    logger.debug(f"Loading model file {path}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"cannot read model file {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise ModelFileError(f"model file {path} is not UTF-8 text") from None
    return parse_model_text(text)


def format_model(model: KripkeModel, root: Optional[int] = None) -> str:
    """Model file text with worlds, edges and valuation sorted."""
    lines = [
        "worlds: " + " ".join(str(w) for w in sorted(model.worlds)),
        "rel: " + " ".join(f"{w}->{v}" for w, v in sorted(model.rel)),
        "val: " + " ".join(f"p{a}@{w}" for a, w in sorted(model.val, key=lambda aw: (aw[1], aw[0]))),
    ]
    if root is not None:
        lines.append(f"root: {root}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def model_to_dot(model: KripkeModel, root: Optional[int] = None) -> str:
    """GraphViz rendering; reflexive edges are left implicit and nodes list their true atoms."""
    lines = ["digraph kripke {", "  rankdir=BT;"]
    for w in sorted(model.worlds):
        atoms = ", ".join(f"p{a}" for a in model.true_atoms(w))
        shape = "doublecircle" if w == root else "circle"
        lines.append(f'  w{w} [label="{w}\\n{atoms}", shape={shape}];')
    for w, v in sorted(model.rel):
        if w != v:
            lines.append(f"  w{w} -> w{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"

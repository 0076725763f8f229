"""JSON encodings for fields, presentations, words, parameter data,
representations and decomposition reports."""

from __future__ import annotations

import json

from .errors import ClannishError
from .fields import make_field
from .linalg import Matrix
from .presentation import ArrowInfo, Letter, validate
from .reps import Representation
from .words import Word, validate_word


def element_to_json(x):
    return list(x.coeffs)


def element_from_json(field, data):
    if isinstance(data, int):
        return field.el(data)
    return field.el(list(data))


def field_to_json(field):
    return {"p": field.p, "n": field.n, "modulus": list(field.modulus)}


def field_from_json(data):
    return make_field(int(data["p"]), int(data["n"]), data.get("modulus"))


def presentation_to_json(pres):
    return {
        "field": field_to_json(pres.field),
        "vertices": list(pres.vertices),
        "arrows": [
            {
                "name": a,
                "from": pres.arrows[a].source,
                "to": pres.arrows[a].target,
                "sigma": pres.arrows[a].sigma_k,
            }
            for a in pres.arrow_names
        ],
        "special": [
            {
                "loop": s,
                "beta": element_to_json(q.beta),
                "gamma": element_to_json(q.gamma),
            }
            for s, q in sorted(pres.special.items())
        ],
        "zero_relations": [list(r) for r in pres.zero_relations],
    }


def presentation_from_json(data):
    field = field_from_json(data["field"])
    arrows = [
        ArrowInfo(a["name"], a["from"], a["to"], int(a.get("sigma", 0)))
        for a in data["arrows"]
    ]
    special = {
        s["loop"]: (
            element_from_json(field, s["beta"]),
            element_from_json(field, s["gamma"]),
        )
        for s in data.get("special", [])
    }
    relations = [tuple(r) for r in data.get("zero_relations", [])]
    return validate(field, tuple(data["vertices"]), arrows, special, relations)


def letter_to_json(letter):
    if letter.kind == "s":
        return {"star": letter.name}
    return {"arrow": letter.name, "dir": "dir" if letter.kind == "d" else "inv"}


def letter_from_json(data):
    if "star" in data:
        return Letter("s", data["star"])
    return Letter("d" if data.get("dir", "dir") == "dir" else "i", data["arrow"])


def word_to_json(w):
    out = {
        "sign": w.eps,
        "v0": w.v0,
        "letters": [letter_to_json(l) for l in (w.letters if w.shape == "finite" else w.period)],
    }
    if w.shape == "zper":
        out["period"] = len(w.period)
    return out


def word_from_json(pres, data):
    letters = tuple(letter_from_json(l) for l in data.get("letters", []))
    if data.get("period"):
        if int(data["period"]) != len(letters):
            raise ClannishError("period must equal the number of letters given")
        w = Word("zper", pres.head(letters[0]), pres.sign(letters[0]), (), letters)
    else:
        v0 = data["v0"] if not letters else pres.head(letters[0])
        eps = int(data["sign"]) if not letters else pres.sign(letters[0])
        w = Word("finite", v0, eps, letters)
    return validate_word(pres, w)


def matrix_to_json(mat):
    return [[element_to_json(x) for x in row] for row in mat.rows]


def matrix_from_json(field, data, nrows=None, ncols=None):
    rows = [[element_from_json(field, x) for x in row] for row in data]
    return Matrix(field, rows, nrows if rows == [] else None, ncols if rows == [] else None)


def representation_to_json(rep, include_presentation=True):
    out = {
        "field": field_to_json(rep.field),
        "dims": dict(rep.dims),
        "arrows": {
            name: {
                "sigma": rep.pres.arrows[name].sigma_k,
                "matrix": matrix_to_json(rep.mats[name]),
            }
            for name in rep.pres.arrow_names
        },
    }
    if rep.labels is not None:
        out["labels"] = {v: [list(x) for x in lst] for v, lst in rep.labels.items()}
    if include_presentation:
        out["presentation"] = presentation_to_json(rep.pres)
    return out


def representation_from_json(data, pres=None):
    if pres is None:
        if "presentation" not in data:
            raise ClannishError("representation file carries no presentation")
        pres = presentation_from_json(data["presentation"])
    field = pres.field
    dims = {v: int(d) for v, d in data["dims"].items()}
    mats = {}
    for name, spec in data.get("arrows", {}).items():
        info = pres.arrows[name]
        rows = [[element_from_json(field, x) for x in row] for row in spec["matrix"]]
        mats[name] = Matrix(field, rows, dims.get(info.source, 0), dims.get(info.target, 0))
    labels = None
    if "labels" in data:
        labels = {v: [tuple(x) for x in lst] for v, lst in data["labels"].items()}
    return Representation(pres, dims, mats, labels=labels)


def word_to_compact(w):
    """Human-typable spelling: letters joined by dots, e.g. "s*.a^-1.s*"."""
    letters = w.letters if w.shape == "finite" else w.period
    body = ".".join(
        l.name + "*" if l.kind == "s" else (l.name if l.kind == "d" else l.name + "^-1")
        for l in letters
    )
    if w.shape == "zper":
        return f"({body})"
    return body or f"e:{w.v0}:{'+' if w.eps > 0 else '-'}"


def word_from_compact(pres, text):
    text = text.strip()
    if text.startswith("e:"):
        _, v0, sign = text.split(":")
        return Word("finite", v0, 1 if sign == "+" else -1, ())
    periodic = text.startswith("(") and text.endswith(")")
    if periodic:
        text = text[1:-1]
    letters = []
    for tok in text.split("."):
        tok = tok.strip()
        if tok.endswith("^-1"):
            letters.append(Letter("i", tok[:-3]))
        elif tok.endswith("*"):
            letters.append(Letter("s", tok[:-1]))
        else:
            letters.append(Letter("d", tok))
    letters = tuple(letters)
    if periodic:
        w = Word("zper", pres.head(letters[0]), pres.sign(letters[0]), (), letters)
    else:
        w = Word("finite", pres.head(letters[0]), pres.sign(letters[0]), letters)
    return validate_word(pres, w)


def parse_word_argument(pres, text):
    """Accept a compact spelling, inline JSON, or @path-to-JSON."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return word_from_json(pres, json.load(fh))
    if text.startswith("{"):
        return word_from_json(pres, json.loads(text))
    return word_from_compact(pres, text)

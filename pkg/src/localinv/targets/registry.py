"""JSON instance descriptors and random instance samplers for every target.

A descriptor is a dict such as ``{"target": "rsa_fe", "n": "0x21", "e": "3",
"c": "1a"}``.  Integers are hex strings (optional ``0x``) or JSON ints; bit
vectors are the hex of their LSB-first packed integer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Callable, Optional

from ..embed import invert_embedding
from ..field import GF2, GF2w, GFp, StateVec, parse_int
from ..lrs import BlackBoxMap, invert_local
from . import spn as spn_mod
from .dlp import dlp_f2w_map, dlp_fp_map
from .ec import Curve, CurveInstance, ecdlp_map
from .rsa import RsaInstance, rsa_fc_map, rsa_fe_map
from .stream import KEY_BITS, StreamInstance, stream_map


@dataclass
class Problem:
    """A map, a target value, and a domain-level check of a recovered input."""

    name: str
    map: BlackBoxMap
    y: StateVec
    check: Optional[Callable[[int], bool]] = None
    secret: Optional[int] = None
    params: dict = dc_field(default_factory=dict)

    @property
    def embedding(self) -> bool:
        return self.map.n_in < self.map.n_out

    @property
    def n_bits(self) -> int:
        return self.map.n_in * max(1, (self.map.field.order - 1).bit_length())

    def solve(self, M: int, mode: str = "paper", shortcut: bool = True):
        if self.embedding:
            return invert_embedding(self.map, self.y, M, mode=mode, shortcut=shortcut)
        return invert_local(self.map, self.y, M, mode=mode, shortcut=shortcut)


def _vec(fmap: BlackBoxMap, v: int, out: bool = True) -> StateVec:
    return StateVec.from_int(fmap.field, fmap.n_out if out else fmap.n_in, v)


def _field(desc: dict):
    kind = str(desc.get("field", "gf2")).lower()
    if kind == "gf2":
        return GF2()
    if kind == "gfp":
        return GFp(parse_int(desc["p"]))
    if kind == "gf2w":
        return GF2w(int(desc["w"]), parse_int(desc["reduction"]))
    raise ValueError(f"unknown field {kind!r}")


# -- builders from complete descriptors --------------------------------------

def _rsa_fe(d):
    inst = RsaInstance(parse_int(d["n"]), parse_int(d["e"]))
    c = parse_int(d["c"])
    fmap = rsa_fe_map(inst)
    return Problem("rsa_fe", fmap, _vec(fmap, c),
                   check=lambda x: pow(x % inst.n, inst.e, inst.n) == c, params={"n": inst.n, "e": inst.e, "c": c})


def _rsa_fc(d):
    inst = RsaInstance(parse_int(d["n"]), parse_int(d["e"]))
    c, m = parse_int(d["c"]), parse_int(d["m"])
    fmap = rsa_fc_map(inst, c)
    return Problem("rsa_fc", fmap, _vec(fmap, m), check=lambda x: pow(c, x, inst.n) == m,
                   params={"n": inst.n, "e": inst.e, "c": c, "m": m})


def _dlp_fp(d):
    p, a, b = parse_int(d["p"]), parse_int(d["a"]), parse_int(d["b"])
    fmap = dlp_fp_map(p, a)
    return Problem("dlp_fp", fmap, StateVec(fmap.field, (b,)), check=lambda x: pow(a, x, p) == b,
                   params={"p": p, "a": a, "b": b})


def _dlp_f2w(d):
    w, red, a, b = int(d["w"]), parse_int(d["reduction"]), parse_int(d["a"]), parse_int(d["b"])
    rev = bool(d.get("reversed", False))
    fmap = dlp_f2w_map(w, red, a, reversed_index=rev)
    field = GF2w(w, red)

    def check(x):
        from .dlp import reverse_bits
        return field.pow(a, reverse_bits(x, w) if rev else x) == b

    return Problem("dlp_f2w", fmap, _vec(fmap, b), check=check, params={"w": w, "a": a, "b": b})


def _spn(d):
    p, c = parse_int(d["plaintext"]), parse_int(d["ciphertext"])
    fmap = spn_mod.spn_map(spn_mod.SpnInstance(p))
    return Problem("spn", fmap, _vec(fmap, c), check=lambda k: spn_mod.encrypt(k, p) == c,
                   params={"plaintext": p, "ciphertext": c})


def _stream(d):
    inst = StreamInstance(parse_int(d["iv"]), int(d.get("start", 32)), int(d.get("length", KEY_BITS)))
    w = parse_int(d["keystream"])
    fmap = stream_map(inst)
    return Problem("stream", fmap, _vec(fmap, w), check=lambda k: inst.window(k) == w,
                   params={"iv": inst.iv, "start": inst.start, "keystream": w})


def _curve_instance(d) -> CurveInstance:
    curve = Curve(parse_int(d["q"]), parse_int(d["A"]), parse_int(d["B"]))
    P = tuple(parse_int(v) for v in d["P"])
    return CurveInstance(curve, P, parse_int(d["order"]))


def _ecdlp(d):
    inst = _curve_instance(d)
    Q = tuple(parse_int(v) for v in d["Q"])
    fmap = ecdlp_map(inst)
    return Problem("ecdlp", fmap, _vec(fmap, inst.encode_point(Q)),
                   check=lambda x: x % inst.order != 0 and inst.curve.mul(x % inst.order, inst.P) == Q,
                   params={"q": inst.curve.q, "order": inst.order, "Q": Q})


def _table(d):
    field = _field(d)
    n = int(d["n"])
    table = [parse_int(v) for v in d["table"]]
    fmap = BlackBoxMap.from_table(field, n, table, d.get("name", "table"))
    y = parse_int(d["y"])
    return Problem("table", fmap, _vec(fmap, y), check=lambda x: table[x] == y, params={"n": n})


def _identity(d):
    field = _field(d)
    n = int(d["n"])
    fmap = BlackBoxMap(field, n, n, lambda x: x, f"identity[{n}]")
    y = parse_int(d["y"])
    return Problem("identity", fmap, _vec(fmap, y), check=lambda x: x == y, params={"n": n})


BUILDERS = {
    "rsa_fe": (_rsa_fe, ("n", "e", "c")),
    "rsa_fc": (_rsa_fc, ("n", "e", "c", "m")),
    "dlp_fp": (_dlp_fp, ("p", "a", "b")),
    "dlp_f2w": (_dlp_f2w, ("w", "reduction", "a", "b", "reversed?")),
    "spn": (_spn, ("plaintext", "ciphertext")),
    "stream": (_stream, ("iv", "keystream", "start?", "length?")),
    "ecdlp": (_ecdlp, ("q", "A", "B", "P", "Q", "order")),
    "table": (_table, ("n", "table", "y", "field?", "p?")),
    "identity": (_identity, ("n", "y", "field?")),
}


def load_problem(desc: dict) -> Problem:
    """Build a :class:`Problem` from a complete descriptor."""
    target = desc.get("target")
    if target not in BUILDERS:
        raise ValueError(f"unknown target {target!r}; known: {sorted(BUILDERS)}")
    builder, fields = BUILDERS[target]
    missing = [f for f in fields if not f.endswith("?") and f not in desc]
    if missing:
        raise ValueError(f"target {target!r} is missing fields {missing}")
    return builder(desc)


# -- samplers for density studies ----------------------------------------------

def _rand_unit(rng: random.Random, n: int) -> int:
    while True:
        v = rng.randrange(2, n)
        if gcd(v, n) == 1:
            return v


def sample_problem(spec: dict, rng: random.Random, sampling: str = "secret") -> Problem:
    """Draw one instance of the family described by ``spec``.

    ``sampling="secret"`` draws the unknown and derives y by a forward
    evaluation; ``sampling="uniform"`` draws y uniformly from the codomain.
    A ``values`` list in ``spec`` (with ``index`` supplied by the caller)
    selects y deterministically instead.
    """
    target = spec["target"]
    if target in ("identity", "random_map", "random_permutation"):
        n = int(spec["n"])
        field = _field(spec)
        size = field.order ** n
        if target == "identity":
            fmap = BlackBoxMap(field, n, n, lambda x: x, f"identity[{n}]")
        else:
            if target == "random_map":
                table = [rng.randrange(size) for _ in range(size)]
            else:
                table = list(range(size))
                rng.shuffle(table)
            fmap = BlackBoxMap.from_table(field, n, table, target)
        if sampling == "secret" and target != "identity":
            x = rng.randrange(size)
            return Problem(target, fmap, fmap(StateVec.from_int(field, n, x)), secret=x)
        y = _pick(spec, rng, size)
        return Problem(target, fmap, StateVec.from_int(field, n, y))

    if target == "rsa_fe":
        n, e = parse_int(spec["n"]), parse_int(spec["e"])
        if "values" in spec:
            c = parse_int(spec["values"][spec["index"]])
            return _rsa_fe({"n": n, "e": e, "c": c})
        if sampling == "uniform":
            c = rng.randrange(1 << n.bit_length())
            return _rsa_fe({"n": n, "e": e, "c": c})
        m = rng.randrange(0, n)
        p = _rsa_fe({"n": n, "e": e, "c": pow(m, e, n)})
        p.secret = m
        return p

    if target == "rsa_fc":
        n, e = parse_int(spec["n"]), parse_int(spec["e"])
        m = _rand_unit(rng, n)
        p = _rsa_fc({"n": n, "e": e, "m": m, "c": pow(m, e, n)})
        return p

    if target == "dlp_fp":
        pr, a = parse_int(spec["p"]), parse_int(spec["a"])
        x = rng.randrange(1, pr - 1)
        p = _dlp_fp({"p": pr, "a": a, "b": pow(a, x, pr)})
        p.secret = x
        return p

    if target == "dlp_f2w":
        w, red, a = int(spec["w"]), parse_int(spec["reduction"]), parse_int(spec["a"])
        x = rng.randrange(1 << w)
        b = GF2w(w, red).pow(a, x)
        p = _dlp_f2w({"w": w, "reduction": red, "a": a, "b": b})
        p.secret = x
        return p

    if target == "spn":
        k = rng.randrange(1 << 16)
        pt = parse_int(spec["plaintext"]) if "plaintext" in spec else rng.randrange(1 << 16)
        p = _spn({"plaintext": pt, "ciphertext": spn_mod.encrypt(k, pt)})
        p.secret = k
        return p

    if target == "stream":
        iv = parse_int(spec["iv"]) if "iv" in spec else rng.randrange(256)
        start = int(spec.get("start", 32))
        k = rng.randrange(1 << KEY_BITS)
        inst = StreamInstance(iv, start)
        p = _stream({"iv": iv, "start": start, "keystream": inst.window(k)})
        p.secret = k
        return p

    if target == "ecdlp":
        inst = _curve_instance(spec)
        m = rng.randrange(1, inst.order)
        Q = inst.curve.mul(m, inst.P)
        d = dict(spec, Q=list(Q))
        p = _ecdlp(d)
        p.secret = m
        return p

    raise ValueError(f"cannot sample target {target!r}")


def _pick(spec, rng, size):
    if "values" in spec:
        return parse_int(spec["values"][spec["index"]])
    return rng.randrange(size)


SAMPLEABLE = ("identity", "random_map", "random_permutation", "rsa_fe", "rsa_fc",
              "dlp_fp", "dlp_f2w", "spn", "stream", "ecdlp")

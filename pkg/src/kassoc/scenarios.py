"""Canonical generator scenarios: worked examples and failure modes.

Each scenario bundles a ground-truth DAG with an exact distribution
payload (discrete CPTs or a linear-Gaussian system) plus its parameters.
Unobserved noise coins are marginalised into the CPTs, they are never
graph nodes.  Discrete scenarios verify at construction that every
pairwise d-separation of the DAG holds as an exact independence in the
joint (Markov audit); full assumption audits live in :mod:`kassoc.audit`.
"""

from __future__ import annotations

import json
import random
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .distribution import Cpt, DiscreteJoint, DistributionError
from .gaussian import GaussianSystem
from .graph import Dag
from .oracle import (
    DiscreteOracle,
    GaussianOracle,
    GraphOracle,
    IndependenceOracle,
)

HALF = Fraction(1, 2)


class ScenarioError(ValueError):
    """Invalid scenario parameters or file contents."""


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    dag: Dag
    kind: str  # "discrete" | "gaussian" | "graph"
    cpts: tuple[Cpt, ...] | None = None
    gaussian: GaussianSystem | None = None
    params: Mapping[str, Fraction] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        if self.kind == "discrete":
            if self.cpts is None:
                raise ScenarioError("discrete payload needs CPTs")
            object.__setattr__(self, "cpts", tuple(self.cpts))
            joint = DiscreteJoint.from_cpts(self.dag, self.cpts)
            object.__setattr__(self, "_joint", joint)
            _verify_pairwise_markov(self.dag, joint)
        elif self.kind == "gaussian":
            if self.gaussian is None or self.gaussian.nodes != self.dag.nodes:
                raise ScenarioError("gaussian payload must cover the graph nodes")
            object.__setattr__(self, "_joint", None)
        elif self.kind == "graph":
            object.__setattr__(self, "_joint", None)
        else:
            raise ScenarioError(f"unknown payload kind {self.kind!r}")
        object.__setattr__(
            self, "params", {k: Fraction(v) for k, v in self.params.items()}
        )

    @property
    def joint(self) -> DiscreteJoint | None:
        return self._joint

    def __eq__(self, other):
        return isinstance(other, Scenario) and (
            (self.name, self.dag, self.kind, self.cpts, self.gaussian,
             dict(self.params), self.notes)
            == (other.name, other.dag, other.kind, other.cpts, other.gaussian,
                dict(other.params), other.notes)
        )

    def oracle(self) -> IndependenceOracle:
        """Exact oracle over the scenario's distribution payload."""
        if self.kind == "discrete":
            return DiscreteOracle(self.joint)
        if self.kind == "gaussian":
            return GaussianOracle(self.gaussian)
        return GraphOracle(self.dag)

    def graph_oracle(self) -> GraphOracle:
        return GraphOracle(self.dag)

    def annotations(self):
        """Verified assumption report (cached); see :mod:`kassoc.audit`."""
        cached = getattr(self, "_annotations", None)
        if cached is None:
            from .audit import audit_scenario

            cached = audit_scenario(self)
            object.__setattr__(self, "_annotations", cached)
        return cached


def _verify_pairwise_markov(dag: Dag, joint: DiscreteJoint) -> None:
    from .association import subsets_by_size  # local import to avoid a cycle

    for i, x in enumerate(dag.nodes):
        for y in dag.nodes[i + 1 :]:
            pool = [v for v in dag.nodes if v not in (x, y)]
            for s in subsets_by_size(pool, dag.nodes, len(pool)):
                if dag.d_separated({x}, {y}, s) and not joint.is_independent(x, y, s):
                    raise ScenarioError(
                        f"CMC violated: {x} d-sep {y} | {set(s)} but dependent"
                    )


def _xor(*bits: int) -> int:
    return sum(bits) % 2


# -- discrete generators ------------------------------------------------------


def noisy_xor(p: Fraction = Fraction(1, 4)) -> Scenario:
    """Collider X -> Y <- Z where Y is the xor of its parents plus a noise
    coin of bias p (0 <= p < 1/2).  All three pairs are marginally
    independent; the triple is a minimal unfaithful triple.
    """
    p = Fraction(p)
    if not 0 <= p < HALF:
        raise ScenarioError("noise bias must satisfy 0 <= p < 1/2")
    dag = Dag(["X", "Y", "Z"], [("X", "Y"), ("Z", "Y")])
    cpts = [
        Cpt.coin("X", HALF),
        Cpt.coin("Z", HALF),
        Cpt.noisy_function("Y", ["X", "Z"], [2, 2], _xor, p),
    ]
    return Scenario(
        "example1", dag, "discrete", cpts=tuple(cpts),
        params={"p": p},
        notes="noisy xor collider; adjacency faithfulness fails on both edges",
    )


def xor_with_context(p: Fraction = HALF, q: Fraction = Fraction(1, 4)) -> Scenario:
    """Four-node graph {X, Z, W} -> Y with Y = ((X xor Z) and W) xor noise.

    0 < p < 1 keeps W relevant, 0 < q < 1/2 keeps the mechanism noisy and
    detectable.  The W edge breaks the triple's symmetry, so the collider
    at Y is identifiable.
    """
    p, q = Fraction(p), Fraction(q)
    if not 0 < p < 1:
        raise ScenarioError("context bias must satisfy 0 < p < 1")
    if not 0 < q < HALF:
        raise ScenarioError("noise bias must satisfy 0 < q < 1/2")
    dag = Dag(["X", "Z", "W", "Y"], [("X", "Y"), ("Z", "Y"), ("W", "Y")])
    cpts = [
        Cpt.coin("X", HALF),
        Cpt.coin("Z", HALF),
        Cpt.coin("W", p),
        Cpt.noisy_function(
            "Y", ["X", "Z", "W"], [2, 2, 2], lambda x, z, w: (_xor(x, z) & w), q
        ),
    ]
    return Scenario(
        "example2", dag, "discrete", cpts=tuple(cpts),
        params={"p": p, "q": q},
        notes="xor collider with context node W; Y orientable as the collider",
    )


def baseline(kind: str, strength: Fraction = Fraction(1, 9)) -> Scenario:
    """Faithful three-node controls: chain X->Y->Z, fork X<-Y->Z, or the
    collider X->Y<-Z.  Strength must be non-degenerate (no implied extra
    independencies); the collider CPT uses distinct row probabilities
    s, 3s, 5s, 7s.
    """
    s = Fraction(strength)
    if kind in ("chain", "fork") and (s <= 0 or s >= HALF):
        raise ScenarioError("copy strength must satisfy 0 < s < 1/2")
    if kind == "collider" and (s <= 0 or 7 * s >= 1 or s == Fraction(1, 10)):
        # s = 1/10 makes one collider row exactly 1/2, degenerate for Z
        raise ScenarioError("collider strength must satisfy 0 < 7s < 1, s != 1/10")

    def copy_cpt(child, parent):
        return Cpt.noisy_function(child, [parent], [2], lambda v: v, s)

    if kind == "chain":
        dag = Dag(["X", "Y", "Z"], [("X", "Y"), ("Y", "Z")])
        cpts = [Cpt.coin("X", HALF), copy_cpt("Y", "X"), copy_cpt("Z", "Y")]
    elif kind == "fork":
        dag = Dag(["X", "Y", "Z"], [("Y", "X"), ("Y", "Z")])
        cpts = [Cpt.coin("Y", HALF), copy_cpt("X", "Y"), copy_cpt("Z", "Y")]
    elif kind == "collider":
        dag = Dag(["X", "Y", "Z"], [("X", "Y"), ("Z", "Y")])
        rows = {
            (x, z): (1 - s * (1 + 2 * x + 4 * z), s * (1 + 2 * x + 4 * z))
            for x in (0, 1)
            for z in (0, 1)
        }
        cpts = [
            Cpt.coin("X", HALF),
            Cpt.coin("Z", HALF),
            Cpt("Y", 2, ("X", "Z"), (2, 2), rows),
        ]
    else:
        raise ScenarioError(f"unknown baseline kind {kind!r}")
    return Scenario(
        kind, dag, "discrete", cpts=tuple(cpts),
        params={"strength": s}, notes="faithful control scenario",
    )


def xor_chain() -> Scenario:
    """Five-node graph X -> U -> W <- Z, W -> Y with an xor collider at W
    and noisy-copy edges elsewhere.

    {X, Y, Z} is an unfaithful but non-minimal triple (X and Y separate
    given {U, Z}); {U, W, Z} is the minimal unfaithful triple.  Copy noise
    1/4 throughout, xor noise 1/4; these choices are locked in only
    because the exact oracle confirms the intended (in)dependencies (see
    tests).
    """
    flip = Fraction(1, 4)
    dag = Dag(
        ["X", "U", "Z", "W", "Y"],
        [("X", "U"), ("U", "W"), ("Z", "W"), ("W", "Y")],
    )
    cpts = [
        Cpt.coin("X", HALF),
        Cpt.coin("Z", HALF),
        Cpt.noisy_function("U", ["X"], [2], lambda v: v, flip),
        Cpt.noisy_function("W", ["U", "Z"], [2, 2], _xor, flip),
        Cpt.noisy_function("Y", ["W"], [2], lambda v: v, flip),
    ]
    return Scenario(
        "xor_chain", dag, "discrete", cpts=tuple(cpts),
        params={"flip": flip},
        notes="xor collider at W embedded in a chain; only {U,W,Z} is minimal",
    )


def noncollider_xor() -> Scenario:
    """W -> Y -> X <- Z: Y is a noisy copy of W and X a noisy xor of Y, Z.

    Mirror image of the orientable case: Y is strictly 2-associated to
    {X, Z} and 1-associated to W, yet Y is a non-collider, so the collider
    rule must not fire.  Noise levels (1/4 each) are implementer-chosen
    and verified against the intended dependence pattern in tests.
    """
    flip = Fraction(1, 4)
    dag = Dag(["W", "Y", "Z", "X"], [("W", "Y"), ("Y", "X"), ("Z", "X")])
    cpts = [
        Cpt.coin("W", HALF),
        Cpt.coin("Z", HALF),
        Cpt.noisy_function("Y", ["W"], [2], lambda v: v, flip),
        Cpt.noisy_function("X", ["Y", "Z"], [2, 2], _xor, flip),
    ]
    return Scenario(
        "noncollider_xor", dag, "discrete",
        cpts=tuple(cpts), params={"flip": flip},
        notes="Y is a non-collider between {X,Z} and W; rule i must not fire",
    )


def transitivity_failure() -> Scenario:
    """Chain X -> Y -> Z with X independent of Z: a transitivity failure.

    Y is a four-state node carrying (X xor c, d) with c biased and d fair;
    Z is the xor of Y's two components.  The fair component masks X in Z,
    so X and Z are marginally independent AND independent given Y, which
    defeats both orientation rules on (X, Y, Z).
    """
    bias = Fraction(1, 4)
    dag = Dag(["X", "Y", "Z"], [("X", "Y"), ("Y", "Z")])
    # Y encodes (b1, b2) as 2*b1 + b2 with b1 = X xor c, b2 = d
    rows_y = {}
    for x in (0, 1):
        vec = [Fraction(0)] * 4
        for c in (0, 1):
            for d in (0, 1):
                pc = bias if c == 1 else 1 - bias
                vec[2 * _xor(x, c) + d] += pc * HALF
        rows_y[(x,)] = tuple(vec)
    rows_z = {(y,): ((1, 0) if _xor(y >> 1, y & 1) == 0 else (0, 1)) for y in range(4)}
    cpts = [
        Cpt.coin("X", HALF),
        Cpt("Y", 4, ("X",), (2,), rows_y),
        Cpt("Z", 2, ("Y",), (4,), {k: tuple(Fraction(v) for v in vec) for k, vec in rows_z.items()}),
    ]
    return Scenario(
        "transitivity_failure", dag, "discrete",
        cpts=tuple(cpts), params={"bias": bias},
        notes="X indep Z marginally and given Y; detectable 2-OF failure",
    )


def independent_coins(n: int = 3) -> Scenario:
    """n isolated fair coins; the all-independent control."""
    labels = ["X", "Y", "Z", "U", "V", "W"][:n]
    dag = Dag(labels, [])
    cpts = tuple(Cpt.coin(v, HALF) for v in labels)
    return Scenario("coins", dag, "discrete", cpts=cpts, notes="isolated fair coins")


# -- gaussian generators ------------------------------------------------------


def cancelling_paths_3(
    alpha: Fraction = Fraction(1), beta: Fraction = Fraction(1)
) -> Scenario:
    """X -> Z -> Y plus a direct edge X -> Y whose weight cancels the
    indirect path (gamma = alpha * beta, computed, never passed).

    The marginal X-Y association vanishes exactly.  This violation is not
    detectable in principle: the implied independencies are Markov
    equivalent to a graph without the direct edge.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 or beta == 0:
        raise ScenarioError("coefficients must be nonzero")
    dag = Dag(["X", "Z", "Y"], [("X", "Z"), ("Z", "Y"), ("X", "Y")])
    system = GaussianSystem(
        ("X", "Z", "Y"),
        {("Z", "X"): alpha, ("Y", "Z"): beta, ("Y", "X"): -alpha * beta},
        {"X": Fraction(1), "Z": Fraction(1), "Y": Fraction(1)},
    )
    return Scenario(
        "cancel3", dag, "gaussian", gaussian=system,
        params={"alpha": alpha, "beta": beta},
        notes="3-node cancellation; Markov-equivalent, undetectable in principle",
    )


def cancelling_paths_4(
    a: Fraction = Fraction(1), b: Fraction = Fraction(1), c: Fraction = Fraction(1)
) -> Scenario:
    """Paths X -> Y and X -> Z -> W -> Y cancelling exactly.

    Direct weight is -a*b*c by construction.  Unlike the 3-node case this
    violation is detectable: X ends up strictly 2-associated to {W, Y}.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if 0 in (a, b, c):
        raise ScenarioError("coefficients must be nonzero")
    dag = Dag(
        ["X", "Z", "W", "Y"],
        [("X", "Z"), ("Z", "W"), ("W", "Y"), ("X", "Y")],
    )
    system = GaussianSystem(
        ("X", "Z", "W", "Y"),
        {
            ("Z", "X"): a,
            ("W", "Z"): b,
            ("Y", "W"): c,
            ("Y", "X"): -a * b * c,
        },
        {n: Fraction(1) for n in ("X", "Z", "W", "Y")},
    )
    return Scenario(
        "cancel4", dag, "gaussian", gaussian=system,
        params={"a": a, "b": b, "c": c},
        notes="4-node cancellation; detectable via a strict 2-association",
    )


# -- continuous sampler (no exact oracle) -------------------------------------


def sign_product_sampler(n: int, seed: int) -> list[tuple[float, float, float]]:
    """Samples of the continuous collider Y = sign(X*Z) * E.

    X, Z standard normal, E exponential with scale 1/sqrt(2) (so Y has
    unit variance).  Provided for downstream experimentation with
    discretised tests only; there is no exact oracle for it.
    """
    if n < 1:
        raise ScenarioError("need at least one sample")
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        x = rng.gauss(0.0, 1.0)
        z = rng.gauss(0.0, 1.0)
        e = rng.expovariate(math.sqrt(2.0))
        y = math.copysign(e, x * z) if x * z != 0 else 0.0
        out.append((x, z, y))
    return out


def sign_buckets(rows: list[tuple[float, float, float]]):
    """Discretise sign-product samples into 0/1 sign indicators."""
    from .distribution import Dataset

    coded = tuple(
        (int(x > 0), int(z > 0), int(y > 0)) for x, z, y in rows
    )
    return Dataset((("X", 2), ("Z", 2), ("Y", 2)), coded)


# -- registry and serialization ------------------------------------------------

BUILTINS = {
    "example1": noisy_xor,
    "example2": xor_with_context,
    "chain": lambda: baseline("chain"),
    "fork": lambda: baseline("fork"),
    "collider": lambda: baseline("collider"),
    "xor_chain": xor_chain,
    "noncollider_xor": noncollider_xor,
    "transitivity_failure": transitivity_failure,
    "coins": independent_coins,
    "cancel3": cancelling_paths_3,
    "cancel4": cancelling_paths_4,
}


def builtin(name: str) -> Scenario:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ScenarioError(f"unknown builtin scenario {name!r}") from None


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"bad rational literal {s!r}") from exc


def save(scenario: Scenario) -> dict:
    """JSON-ready document; rationals as "num/den" strings."""
    doc = {
        "name": scenario.name,
        "nodes": list(scenario.dag.nodes),
        "edges": sorted(f"{a}->{b}" for a, b in scenario.dag.edges),
        "params": {k: _frac_str(v) for k, v in sorted(scenario.params.items())},
        "notes": scenario.notes,
    }
    if scenario.kind == "discrete":
        blocks = []
        for cpt in scenario.cpts:
            rows = [
                {"given": list(pa), "probs": [_frac_str(p) for p in vec]}
                for pa, vec in sorted(cpt.rows.items())
            ]
            blocks.append(
                {
                    "child": cpt.child,
                    "cardinality": cpt.child_card,
                    "parents": list(cpt.parents),
                    "parent_cardinalities": list(cpt.parent_cards),
                    "rows": rows,
                }
            )
        doc["payload"] = {"type": "discrete", "cpts": blocks}
    elif scenario.kind == "gaussian":
        sys_ = scenario.gaussian
        doc["payload"] = {
            "type": "gaussian",
            "order": list(sys_.nodes),
            "coefficients": {
                f"{p}->{c}": _frac_str(w)
                for (c, p), w in sorted(sys_.coefficients.items())
            },
            "noise": {n: _frac_str(v) for n, v in sorted(sys_.noise_variances.items())},
        }
    else:
        doc["payload"] = {"type": "graph"}
    return doc


def _split_edge(text: str) -> tuple[str, str]:
    if "->" not in text:
        raise ScenarioError(f"bad edge string {text!r}, expected 'parent->child'")
    a, b = text.split("->", 1)
    return a.strip(), b.strip()


def load(doc: dict) -> Scenario:
    """Inverse of :func:`save`; bit-exact round trip."""
    try:
        name = doc["name"]
        nodes = list(doc["nodes"])
        edges = [_split_edge(e) for e in doc["edges"]]
        payload = doc["payload"]
        kind = payload["type"]
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"malformed scenario document: missing {exc}") from exc
    dag = Dag(nodes, edges)
    params = {k: _parse_frac(v) for k, v in doc.get("params", {}).items()}
    notes = doc.get("notes", "")
    if kind == "discrete":
        try:
            cpts = []
            for block in payload["cpts"]:
                rows = {
                    tuple(row["given"]): tuple(_parse_frac(p) for p in row["probs"])
                    for row in block["rows"]
                }
                cpts.append(
                    Cpt(
                        block["child"],
                        int(block["cardinality"]),
                        tuple(block["parents"]),
                        tuple(int(c) for c in block["parent_cardinalities"]),
                        rows,
                    )
                )
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"malformed discrete payload: {exc}") from exc
        except DistributionError as exc:
            raise ScenarioError(f"bad probability table: {exc}") from exc
        return Scenario(name, dag, "discrete", cpts=tuple(cpts), params=params, notes=notes)
    if kind == "gaussian":
        try:
            order = tuple(payload["order"])
            coeffs = {}
            for key, w in payload["coefficients"].items():
                p, c = _split_edge(key)
                coeffs[(c, p)] = _parse_frac(w)
            noise = {n: _parse_frac(v) for n, v in payload["noise"].items()}
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"malformed gaussian payload: {exc}") from exc
        system = GaussianSystem(order, coeffs, noise)
        return Scenario(name, dag, "gaussian", gaussian=system, params=params, notes=notes)
    if kind == "graph":
        return Scenario(name, dag, "graph", params=params, notes=notes)
    raise ScenarioError(f"unknown payload type {kind!r}")


def load_path(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    return load(doc)

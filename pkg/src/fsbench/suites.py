"""Invariant suites run by ``fsbench verify`` and by the acceptance tests.

Each suite returns a :class:`SuiteReport` listing one :class:`Check` per
invariant, with the number of cases examined and the first few failures.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .colourings import (
    SetColouring,
    WitnessF,
    check_axiom_star_instance,
    d_entangled,
    hash_colouring,
    osc_colouring,
    pr1_colouring,
    psi_mod,
    sandwich_sets,
    star_sandwich,
    two_adic_valuation,
)
from .deltasystems import condense, is_delta_system, verify_sum_support
from .fssets import (
    brute_force_partition_check,
    divisibility_transfer,
    exhaustive_fsn_solver,
    exhaustive_pair_solver,
    extend_sumset_witness,
    partition_meta_search,
    pentagon_colouring,
)
from .groups import (
    AbelianPresentation,
    DirectSumElement,
    embed_fg_abelian,
    element_order,
    invariant_factors,
    semigroup_embedding,
    sum_elements,
    word_image,
)
from .instances import (
    MulticubeInstance,
    condensation_input,
    cyclic_table,
    delta_sum_instance,
    entangled_instance,
    osc_instance,
    pr1_instance,
    random_presentation,
    rational_family,
    replay_multicube,
)
from .ordinals import EMPTY

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite"]

MAX_REPORTED_FAILURES = 5


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0
    detail: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, what: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(what())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    params: Dict[str, object]
    checks: List[Check]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self, *, timing: bool = False) -> dict:
        data = {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            data["seconds"] = round(self.seconds, 3)
        return data


def _timed(suite: str, params: dict, body: Callable[[], List[Check]]) -> SuiteReport:
    start = time.perf_counter()
    checks = body()
    return SuiteReport(suite, params, checks, time.perf_counter() - start)


# -- supports ------------------------------------------------------------------------


def supports_suite(instances: int = 10_000, seed: int = 0, max_terms: int = 6) -> SuiteReport:
    """The chain s_1 ∪ ... ∪ s_n ⊆ supp(Σ) ⊆ r ∪ s_1 ∪ ... ∪ s_n on random Δ-systems."""

    def body():
        shape = Check("instances are delta-systems with disjoint tails")
        chain = Check("tails ⊆ supp(sum) ⊆ root ∪ tails")
        cancelled = 0
        rng = random.Random(seed)
        for _ in range(instances):
            inst = delta_sum_instance(rng, max_terms)
            supports = [x.support() for x in inst.elements]
            shape.record(
                all(s == inst.root | t for s, t in zip(supports, inst.tails))
                and (len(supports) < 2 or is_delta_system(supports, inst.root)),
                lambda: f"bad instance {supports}",
            )
            total = sum_elements(inst.elements)
            tails = EMPTY
            for t in inst.tails:
                tails = tails | t
            s = total.support()
            chain.record(tails.issubset(s) and s.issubset(inst.root | tails), lambda: f"supp {s} vs root {inst.root}, tails {tails}")
            if not inst.root.issubset(s):
                cancelled += 1
        chain.detail["root_cancelled"] = cancelled
        return [shape, chain]

    return _timed("supports", {"instances": instances, "seed": seed, "max_terms": max_terms}, body)


# -- condensation --------------------------------------------------------------------


def condensation_suite(instances: int = 100, seed: int = 0, max_terms: int = 4) -> SuiteReport:
    """Output of :func:`condense`: disjoint block sums, a Delta-system with root r_inf, infinite-order root values and exact support sums."""

    def body():
        complete = Check("condense returns the requested number of outputs")
        sums = Check("outputs are sums of disjoint blocks of inputs")
        delta = Check("output supports form a delta-system with root r_inf")
        orders = Check("root values have infinite order")
        identity = Check(f"supp(y_1+...+y_n) = ∪ supp(y_i) for n <= {max_terms}, exhaustive")
        rng = random.Random(seed)
        sizes = []
        for t in range(instances):
            inp = condensation_input(rng)
            sizes.append(len(inp.elements))
            res = condense(inp.elements, inp.target, seed=t, check_terms=1)
            complete.record(res is not None and res.complete and len(res.outputs) == inp.target, lambda: f"instance {t}: {res and res.shortfall}")
            if res is None:
                continue
            cert = res.certificate
            flat = [i for b in cert.blocks for i in b]
            sums.record(
                len(flat) == len(set(flat))
                and all(len(b) == cert.multiplier for b in cert.blocks)
                and all(y == sum_elements([inp.elements[i] for i in b]) for y, b in zip(res.outputs, cert.blocks)),
                lambda: f"instance {t}: blocks {cert.blocks}",
            )
            supports = [y.support() for y in res.outputs]
            delta.record(
                len(set(supports)) == len(supports) and (len(supports) < 2 or is_delta_system(supports, cert.root_infinite)),
                lambda: f"instance {t}: supports {supports}",
            )
            orders.record(
                all(element_order(y[a]) == math.inf for y in res.outputs for a in cert.root_infinite),
                lambda: f"instance {t}: finite order on r_inf {cert.root_infinite}",
            )
            for n in range(2, max_terms + 1):
                rep = verify_sum_support(res.outputs, n, limit=math.inf)
                identity.record(rep.ok and rep.exhaustive, lambda: f"instance {t}, n={n}: {rep.violations[:1]}")
        complete.detail["sizes"] = [min(sizes), max(sizes)] if sizes else []
        return [complete, sums, delta, orders, identity]

    return _timed("condensation", {"instances": instances, "seed": seed, "max_terms": max_terms}, body)


# -- witness function ------------------------------------------------------------------


def witness_f_suite(
    limit: int = 10**5, r: int = 3, m_max: int = 8, n_max: int = 8, width: int = 8, f: Optional[WitnessF] = None
) -> SuiteReport:
    """``f(k) ⊆ k`` below ``limit`` and ``r`` fulfillments of every requirement in the box below the reported bound."""

    def body():
        state = f if f is not None else WitnessF()
        bound = state.fulfillment_bound(r, m_max, n_max, width)
        top = max(limit, bound)
        codes = [state.code(k) for k in range(top)]
        inside = Check(f"f(k) ⊆ k for k < {limit}")
        for k in range(limit):
            inside.record(codes[k].bit_length() <= k, lambda: f"f({k}) has code {codes[k]}")
        fair = Check(f"every (m, n, Ω) with m <= {m_max}, 1 <= n <= {n_max}, Ω ⊆ {{0..{width - 1}}} fulfilled {r} times below K")
        fair.detail["K"] = bound
        fair.detail["scheduler_stage"] = state.stage
        least = None
        for m in range(m_max + 1):
            for n in range(1, n_max + 1):
                counts = [0] * (1 << width)
                for code in codes[m:bound:n]:
                    if code < len(counts):
                        counts[code] += 1
                for code, seen in enumerate(counts):
                    least = seen if least is None else min(least, seen)
                    fair.record(seen >= r, lambda: f"(m={m}, n={n}, code={code}) fulfilled {seen} times")
        fair.detail["fewest_fulfillments"] = least
        return [inside, fair]

    return _timed("witness-f", {"limit": limit, "r": r, "m_max": m_max, "n_max": n_max, "width": width}, body)


# -- multicube replay --------------------------------------------------------------------


def multicube_parameters(ab=(1, 2), m_max: int = 4, n_max: int = 3) -> List[Tuple[int, int, int, int]]:
    return [(a, b, m, n) for a in ab for b in ab for m in range(a, m_max + 1) for n in range(b, n_max + 1)]


def multicube_suite(
    ab=(1, 2), m_max: int = 4, n_max: int = 3, a_sizes=(4, 5, 6), max_p: int = 4, seed: int = 0, f: Optional[WitnessF] = None
) -> SuiteReport:
    """Finite replay of the head-tail-tail argument: ``d(supp x) = p`` for every small ``p ⊆ A``."""

    def body():
        state = f if f is not None else WitnessF()
        replay = Check("d_support(x) = p for every p ⊆ A with |p| <= max_p")
        largest_k = 0
        for a, b, m, n in multicube_parameters(ab, m_max, n_max):
            inst = MulticubeInstance(a, b, m, n, seed)
            for size in a_sizes:
                for out in replay_multicube(state, inst, size, max_p):
                    largest_k = max(largest_k, out.k)
                    replay.record(out.ok, lambda: f"(a,b,m,n)=({a},{b},{m},{n}), |A|={size}, p={out.p}: got {out.d_value}")
        replay.detail["largest_k"] = largest_k
        return [replay]

    params = {"ab": list(ab), "m_max": m_max, "n_max": n_max, "a_sizes": list(a_sizes), "max_p": max_p, "seed": seed}
    return _timed("multicube", params, body)


# -- sandwich axioms -------------------------------------------------------------------------


def _sandwich_check(check: Check, colouring: SetColouring, chosen, delta: int, label: str) -> int:
    core, union = star_sandwich(chosen)
    free = len(union - core)
    bad = [z for z in sandwich_sets(chosen) if colouring(z) != delta]
    check.record(not bad, lambda: f"{label}: d({bad[0]}) = {colouring(bad[0])} != {delta}")
    return free


def axioms_suite(instances: int = 50, seed: int = 0, max_shared: int = 10) -> SuiteReport:
    """Every sandwich set of a synthetic instance gets the predicted colour."""

    def body():
        pr1 = Check("split pair colouring: every sandwich set has colour δ")
        osc = Check("oscillation colouring: every sandwich set has colour δ")
        osc_shift = Check("oscillation shift: ι = v2(max osc on a × b_m)")
        ent = Check("entangled order: every sandwich set has colour δ")
        star = Check("check_axiom_star_instance finds the chosen tuple")
        rng = random.Random(seed)
        sets = 0
        largest_free = 0
        for t in range(instances):
            p = pr1_instance(rng, max_shared)
            col = pr1_colouring(p.oracle, p.theta, p.chi)
            free = _sandwich_check(pr1, col, p.chosen, p.delta, f"pr1 instance {t}")
            sets += 1 << free
            largest_free = max(largest_free, free)
            star.record(check_axiom_star_instance(col, [[x] for x in p.chosen], p.delta) == tuple(p.chosen), lambda: f"pr1 instance {t}")

            o = osc_instance(rng, max_shared)
            col = osc_colouring(o.oracle, o.family, psi_mod)
            free = _sandwich_check(osc, col, o.chosen, o.delta, f"osc instance {t}")
            sets += 1 << free
            largest_free = max(largest_free, free)
            top = max(o.oracle(x, y) for x in o.a for y in o.b_shifted)
            osc_shift.record(top == o.top + o.shift and two_adic_valuation(top) == o.iota, lambda: f"osc instance {t}: max {top}, ι {o.iota}")
            star.record(check_axiom_star_instance(col, [[x] for x in o.chosen], o.delta) == tuple(o.chosen), lambda: f"osc instance {t}")

            e = entangled_instance(rng)
            col = SetColouring(lambda z, inst=e.instance: d_entangled(inst, z), None, "entangled")
            _sandwich_check(ent, col, [e.x, e.y], e.delta, f"entangled instance {t}")
        pr1.detail["sandwich_sets"] = sets
        pr1.detail["largest_free_part"] = largest_free
        return [pr1, osc, osc_shift, ent, star]

    return _timed("axioms", {"instances": instances, "seed": seed, "max_shared": max_shared}, body)


# -- transfer and finite partition checks ------------------------------------------------------


def _halve(x: DirectSumElement) -> DirectSumElement:
    return DirectSumElement(x.signature, {k: v / 2 for k, v in x.entries.items()})


def fssets_suite(instances: int = 100, seed: int = 0, theta: int = 3, meta_search: bool = False) -> SuiteReport:
    """Divisibility transfer, sumset extension and the brute-force partition checks."""

    def body():
        transfer = Check("FS_2 witnesses on the shifted copy transfer to FS_3 witnesses of the same colour")
        extend = Check("extend_sumset_witness output re-evaluates to δ")
        pentagon = Check("pentagon colouring passes the (5, 3, 2, 2) check")
        rng = random.Random(seed)
        found = 0
        for t in range(instances):
            xs = rational_family(rng, rng.randint(3, 10))
            c = hash_colouring(theta, seed=t)
            z = _halve(xs[0])
            ys = [y + z for y in xs[1:]]
            for delta in range(theta):
                pair = exhaustive_fsn_solver(c, ys, 2, delta)
                out = divisibility_transfer(c, xs, 2, delta)
                if pair is None:
                    transfer.record(out is None, lambda: f"instance {t}, δ={delta}: transfer without an FS_2 witness")
                    continue
                found += 1
                ok = (
                    out is not None
                    and len(set(out)) == 3
                    and c(sum_elements([xs[i] for i in out])) == delta
                )
                transfer.record(ok, lambda: f"instance {t}, δ={delta}: FS_2 witness {pair} gave {out}")
        transfer.detail["fs2_witnesses"] = found
        for t in range(instances):
            c = hash_colouring(theta, seed=10_000 + t)
            sets = [rational_family(rng, rng.randint(1, 4)) for _ in range(rng.randint(2, 4))]
            pick = [rng.randrange(len(s)) for s in sets]
            delta = c(sum_elements([s[i] for s, i in zip(sets, pick)]))
            out = extend_sumset_witness(c, exhaustive_pair_solver, sets, delta)
            extend.record(
                out is not None and c(sum_elements([s[i] for s, i in zip(sets, out)])) == delta,
                lambda: f"instance {t}: {out}",
            )
        result = brute_force_partition_check(5, 3, 2, 2, pentagon_colouring)
        pentagon.record(result.holds, lambda: f"counterexample {result.counterexample}")
        checks = [transfer, extend, pentagon]
        if meta_search:
            meta = Check("no 2-colouring of pairs from 6 points passes the (6, 3, 2, 2) check")
            passing = partition_meta_search(6, 3, 2, 2)
            meta.record(not passing, lambda: f"{len(passing)} colourings pass")
            meta.detail["passing_at_5"] = len(partition_meta_search(5, 3, 2, 2))
            checks.append(meta)
        return checks

    return _timed("fssets", {"instances": instances, "seed": seed, "theta": theta, "meta_search": meta_search}, body)


# -- embedding -------------------------------------------------------------------------------


def _det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_divisors(matrix: Sequence[Sequence[int]], cols: int) -> List[int]:
    """``d_k`` = gcd of the k×k minors, for k = 1 .. while nonzero."""
    rows = len(matrix)
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[matrix[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g)
    return out


def lattice_contains(relations: Sequence[Sequence[int]], cols: int, v: Sequence[int]) -> bool:
    """Is ``v`` in the integer row span?  Adding ``v`` must keep the rank and the top determinantal divisor."""
    before = determinantal_divisors(relations, cols)
    after = determinantal_divisors(list(relations) + [list(v)], cols)
    return len(after) == len(before) and (not before or after[-1] == before[-1])


def _words(g: int, length: int):
    """Integer vectors with ℓ1 norm at most ``length``."""
    for vec in itertools.product(range(-length, length + 1), repeat=g):
        if sum(abs(a) for a in vec) <= length:
            yield vec


def _check_presentation(pres: AbelianPresentation, label: str, relations: Check, injective: Check, smith: Check, length: int) -> None:
    sig, images = embed_fg_abelian(pres)
    g = pres.generators
    for rel in pres.relations:
        img = word_image(images, rel, sig)
        relations.record(not img, lambda: f"{label}: relation {rel} maps to {img}")
    classes: Dict[DirectSumElement, Tuple[int, ...]] = {}
    bad = None
    for w in _words(g, length):
        img = word_image(images, w, sig)
        rep = classes.setdefault(img, w)
        if rep is not w and not lattice_contains(pres.relations, g, [a - b for a, b in zip(w, rep)]):
            bad = (rep, w)
            break
    injective.record(bad is None, lambda: f"{label}: words {bad} collide")
    expected = []
    divisors = determinantal_divisors(pres.relations, g) if pres.relations else []
    prev = 1
    for d in divisors:
        expected.append(d // prev)
        prev = d
    factors = [s for s in invariant_factors(pres.relations, cols=g) if s]
    smith.record(factors == expected, lambda: f"{label}: Smith {factors} vs determinantal {expected}")


def embedding_suite(instances: int = 50, seed: int = 0, max_table: int = 12, word_length: int = 4) -> SuiteReport:
    """Embeddings of random presentations and of cyclic Cayley tables."""

    def body():
        relations = Check("images satisfy every relation")
        injective = Check(f"images are injective on words of length <= {word_length}")
        smith = Check("Smith invariant factors match the determinantal divisors")
        table = Check("Cayley-table embeddings are injective homomorphisms")
        rng = random.Random(seed)
        for t in range(instances):
            pres = random_presentation(rng)
            _check_presentation(pres, f"presentation {t} {pres.relations}", relations, injective, smith, word_length)
        for m in range(1, max_table + 1):
            tab = cyclic_table(m)
            pres, words = semigroup_embedding(tab)
            _check_presentation(pres, f"Z_{m}", relations, injective, smith, word_length)
            sig, images = embed_fg_abelian(pres)
            elems = [word_image(images, w, sig) for w in words]
            ok = len(set(elems)) == m and all(
                elems[tab[i][j]] == elems[i] + elems[j] for i in range(m) for j in range(m)
            )
            table.record(ok, lambda: f"Z_{m}: images {elems}")
        return [relations, injective, smith, table]

    return _timed("embedding", {"instances": instances, "seed": seed, "max_table": max_table, "word_length": word_length}, body)


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "supports": supports_suite,
    "condensation": condensation_suite,
    "witness-f": witness_f_suite,
    "multicube": multicube_suite,
    "axioms": axioms_suite,
    "fssets": fssets_suite,
    "embedding": embedding_suite,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    if name == "witness-f":
        return suite()
    return suite(seed=seed)

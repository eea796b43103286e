"""Generator-defined permutation groups.

Stabilizer chains (randomized Schreier-Sims with a deterministic verification
pass) support exact orders, membership sifting, point stabilizers and element
enumeration. On top of those sit induced actions on invariant partitions with
kernels, bounded normal-subgroup enumeration, quasiprimitivity classification,
a prime-power-degree semiregular element finder and coprime lifting of
semiregular elements through quotients.

Heavy operations (normal subgroups, normalizers, full enumeration) take an
explicit element-count bound and fail loudly when it is exceeded; group orders
are exact Python integers throughout.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .perm import Permutation

_INT = np.int64

DEFAULT_BOUND = 100_000

_RANDOM_ROUNDS = 30


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold."""


class BoundExceededError(RuntimeError):
    """A bounded operation would need to enumerate past its element bound."""


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Apply a, then b."""
    return b[a]


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=_INT)
    return inv


def _is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(a.size)))


def prime_factors(n: int) -> Counter:
    """Trial-division factorization; intended for n up to ~1e12."""
    if n < 1:
        raise ValueError("n must be positive")
    out: Counter = Counter()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] += 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] += 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == Counter({n: 1})


class _Level:
    __slots__ = ("point", "transversal")

    def __init__(self, point: int):
        self.point = point
        # orbit point -> (rep, rep_inverse); rep maps self.point to the key
        self.transversal: dict[int, tuple[np.ndarray, np.ndarray]] = {}


class StabilizerChain:
    """Base, strong generators and transversals for a permutation group.

    The base extension rule is "smallest moved point first" (after any caller
    supplied prefix), so chains are deterministic for a fixed seed.
    """

    def __init__(self, generators, degree: int, base_prefix=(), seed: int = 0):
        self.degree = degree
        self.levels: list[_Level] = []
        # strong generators as (array, depth); depth = first base index moved
        self._strong: list[tuple[np.ndarray, int]] = []
        for b in base_prefix:
            if not 0 <= b < degree:
                raise ValueError(f"base point {b} out of range")
            self.levels.append(_Level(int(b)))
        gens = []
        seen = set()
        for g in generators:
            arr = np.asarray(g, dtype=_INT)
            key = arr.tobytes()
            if key not in seen and not _is_identity(arr):
                seen.add(key)
                gens.append(arr)
        for arr in gens:
            self._add_strong(arr)
        for lv_index in range(len(self.levels)):
            self._rebuild_level(lv_index)
        self._random_boost(gens, seed)
        self._schreier_sims()
        self.order = 1
        for lv in self.levels:
            self.order *= len(lv.transversal)
        self.base = tuple(lv.point for lv in self.levels)

    # -- construction ----------------------------------------------------

    def _depth_of(self, arr: np.ndarray) -> int:
        for i, lv in enumerate(self.levels):
            if arr[lv.point] != lv.point:
                return i
        return len(self.levels)

    def _add_strong(self, arr: np.ndarray) -> int:
        """Register a strong generator, extending the base if needed."""
        depth = self._depth_of(arr)
        if depth == len(self.levels):
            moved = np.flatnonzero(arr != np.arange(self.degree, dtype=_INT))
            self.levels.append(_Level(int(moved[0])))
        self._strong.append((arr, depth))
        return depth

    def _level_gens(self, i: int) -> list[np.ndarray]:
        return [g for g, d in self._strong if d >= i]

    def _rebuild_level(self, i: int) -> None:
        lv = self.levels[i]
        gens = self._level_gens(i)
        ident = np.arange(self.degree, dtype=_INT)
        lv.transversal = {lv.point: (ident, ident)}
        queue = [lv.point]
        while queue:
            p = queue.pop(0)
            rep = lv.transversal[p][0]
            for g in gens:
                q = int(g[p])
                if q not in lv.transversal:
                    new_rep = _compose(rep, g)
                    lv.transversal[q] = (new_rep, _inverse(new_rep))
                    queue.append(q)

    def _sift(self, arr: np.ndarray, start: int = 0):
        """Reduce arr by transversal reps; return (residue, stop level)."""
        g = arr
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            p = int(g[lv.point])
            if p == lv.point:
                continue
            pair = lv.transversal.get(p)
            if pair is None:
                return g, i
            g = _compose(g, pair[1])
        return g, len(self.levels)

    def _random_boost(self, gens: list[np.ndarray], seed: int) -> None:
        """Seeded random walk; sifting residues pre-populates strong gens."""
        if not gens:
            return
        rng = np.random.default_rng(seed)
        w = np.arange(self.degree, dtype=_INT)
        for _ in range(_RANDOM_ROUNDS):
            g = gens[int(rng.integers(len(gens)))]
            if rng.integers(2):
                g = _inverse(g)
            w = _compose(w, g)
            residue, j = self._sift(w)
            if not _is_identity(residue):
                depth = self._add_strong(residue)
                for lv_index in range(depth, len(self.levels)):
                    self._rebuild_level(lv_index)

    def _schreier_sims(self) -> None:
        """Deterministic verification: every Schreier generator must sift."""
        i = len(self.levels) - 1
        while i >= 0:
            self._rebuild_level(i)
            lv = self.levels[i]
            gens = self._level_gens(i)
            dirty = None
            for p in sorted(lv.transversal):
                rep = lv.transversal[p][0]
                for g in gens:
                    q = int(g[p])
                    tail_inv = lv.transversal[q][1]
                    schreier = _compose(_compose(rep, g), tail_inv)
                    if _is_identity(schreier):
                        continue
                    residue, j = self._sift(schreier, i + 1)
                    if not _is_identity(residue):
                        depth = self._add_strong(residue)
                        for lv_index in range(depth, len(self.levels)):
                            self._rebuild_level(lv_index)
                        dirty = len(self.levels) - 1
                        break
                if dirty is not None:
                    break
            if dirty is None:
                i -= 1
            else:
                i = dirty

    # -- queries ----------------------------------------------------------

    def contains_array(self, arr: np.ndarray) -> bool:
        if arr.size != self.degree:
            raise ValueError("degree mismatch")
        residue, _ = self._sift(arr)
        return _is_identity(residue)

    def contains(self, p: Permutation) -> bool:
        return self.contains_array(p.images)

    def order_factored(self) -> Counter:
        out: Counter = Counter()
        for lv in self.levels:
            out += prime_factors(len(lv.transversal))
        return out

    def strong_generators(self) -> list[np.ndarray]:
        return [g for g, _ in self._strong]

    def stabilizer_generators(self, depth: int) -> list[np.ndarray]:
        """Generators of the pointwise stabilizer of base[:depth]."""
        return [g for g, d in self._strong if d >= depth]

    def iter_elements(self):
        """Every element exactly once, as image arrays."""
        ident = np.arange(self.degree, dtype=_INT)
        reps_per_level = [
            [lv.transversal[p][0] for p in sorted(lv.transversal)]
            for lv in self.levels
        ]

        def rec(i):
            if i == len(reps_per_level):
                yield ident
                return
            for h in rec(i + 1):
                for rep in reps_per_level[i]:
                    yield _compose(h, rep)

        yield from rec(0)

    def random_element(self, rng) -> np.ndarray:
        """Uniformly random element (exact, via transversal products)."""
        acc = np.arange(self.degree, dtype=_INT)
        for lv in reversed(self.levels):
            keys = sorted(lv.transversal)
            rep = lv.transversal[keys[int(rng.integers(len(keys)))]][0]
            acc = _compose(acc, rep)
        return acc


class PermGroup:
    """A permutation group given by generators on 0..degree-1."""

    def __init__(self, generators, degree: int | None = None, *, seed: int = 0):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        self._degree = int(degree)
        if self._degree < 1:
            raise ValueError("degree must be >= 1")
        kept = []
        seen = set()
        for g in gens:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != self._degree:
                raise ValueError("all generators must share the group degree")
            if not g.is_identity() and g not in seen:
                seen.add(g)
                kept.append(g)
        self._gens = tuple(kept)
        self._seed = seed
        self._chain: StabilizerChain | None = None
        self._chain_cache: dict[tuple[int, ...], StabilizerChain] = {}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        if not self._gens:
            return (Permutation.identity(self._degree),)
        return self._gens

    def gen_arrays(self) -> np.ndarray:
        """Generators as one (k, n) int array (identity row if trivial)."""
        if not self._gens:
            return np.arange(self._degree, dtype=_INT)[None, :]
        return np.ascontiguousarray([g.images for g in self._gens], dtype=_INT)

    def is_trivial(self) -> bool:
        return not self._gens

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(
                [g.images for g in self._gens], self._degree, seed=self._seed
            )
        return self._chain

    def chain_with_base(self, prefix) -> StabilizerChain:
        key = tuple(int(b) for b in prefix)
        if key not in self._chain_cache:
            self._chain_cache[key] = StabilizerChain(
                [g.images for g in self._gens],
                self._degree,
                base_prefix=key,
                seed=self._seed,
            )
        return self._chain_cache[key]

    def order(self) -> int:
        return self.chain().order

    def order_factored(self) -> Counter:
        return self.chain().order_factored()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            raise ValueError("degree mismatch")
        return self.chain().contains(p)

    def orbit(self, v: int) -> set[int]:
        if not 0 <= v < self._degree:
            raise ValueError(f"point {v} out of range")
        mask = _kernels.orbit_mask(self.gen_arrays(), v)
        return set(int(x) for x in np.flatnonzero(mask))

    def orbit_partition(self) -> list[list[int]]:
        """Orbits as sorted lists, ordered by least point."""
        seen = np.zeros(self._degree, dtype=bool)
        gens = self.gen_arrays()
        parts = []
        for v in range(self._degree):
            if seen[v]:
                continue
            mask = _kernels.orbit_mask(gens, v)
            pts = np.flatnonzero(mask)
            seen[pts] = True
            parts.append([int(x) for x in pts])
        return parts

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self._degree

    def point_stabilizer(self, v: int) -> "PermGroup":
        if not 0 <= v < self._degree:
            raise ValueError(f"point {v} out of range")
        chain = self.chain_with_base([v])
        gens = [Permutation._wrap(a.copy()) for a in chain.stabilizer_generators(1)]
        return PermGroup(gens, self._degree, seed=self._seed)

    def pointwise_stabilizer(self, points) -> "PermGroup":
        pts = [int(v) for v in points]
        chain = self.chain_with_base(pts)
        gens = [
            Permutation._wrap(a.copy())
            for a in chain.stabilizer_generators(len(pts))
        ]
        return PermGroup(gens, self._degree, seed=self._seed)

    def elements(self, bound: int = DEFAULT_BOUND):
        """Iterate every element exactly once; errors if order > bound."""
        order = self.order()
        if order > bound:
            raise BoundExceededError(f"order {order} exceeds bound {bound}")
        for arr in self.chain().iter_elements():
            yield Permutation._wrap(arr.copy())

    def random_element(self, rng=None) -> Permutation:
        if rng is None:
            rng = np.random.default_rng(self._seed)
        return Permutation._wrap(self.chain().random_element(rng))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self._degree}, ngens={len(self._gens)})"


def is_subgroup(h: PermGroup, g: PermGroup) -> bool:
    if h.degree != g.degree:
        return False
    chain = g.chain()
    return all(chain.contains(x) for x in h.generators)


def normalizes(x: Permutation, h: PermGroup) -> bool:
    """True iff conjugation by x maps H onto itself."""
    chain = h.chain()
    return all(chain.contains(gen.conjugate(x)) for gen in h.generators)


# -- induced actions ------------------------------------------------------


def _validate_partition(partition, n: int) -> list[tuple[int, ...]]:
    classes = [tuple(sorted(int(x) for x in cls)) for cls in partition]
    seen = np.zeros(n, dtype=bool)
    total = 0
    for cls in classes:
        if not cls:
            raise ValueError("empty class in partition")
        for x in cls:
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range")
            if seen[x]:
                raise ValueError(f"point {x} appears in two classes")
            seen[x] = True
        total += len(cls)
    if total != n:
        raise ValueError("partition does not cover all points")
    return classes


@dataclass(frozen=True, repr=False)
class ActionBundle:
    """Induced action of a group on an invariant partition, with kernel.

    ``image_group`` acts on class indices (faithfully, by construction);
    ``kernel`` is the subgroup of the source fixing every class setwise, and
    |source| = |image| * |kernel| is verified at build time.
    """

    image_group: PermGroup
    kernel: PermGroup
    class_labels: tuple[tuple[int, ...], ...]
    _class_index: np.ndarray = field(compare=False)
    _combined: StabilizerChain = field(compare=False)
    _prefix_len: int = field(compare=False)
    _source_degree: int = field(compare=False)

    def __repr__(self) -> str:
        return (
            f"ActionBundle(classes={len(self.class_labels)}, "
            f"image_order={self.image_group.order()}, "
            f"kernel_order={self.kernel.order()})"
        )

    def class_of(self, point: int) -> int:
        return int(self._class_index[point])

    def image_of(self, p: Permutation) -> Permutation:
        """Apply the action homomorphism to an element of the source."""
        n = self._source_degree
        if p.degree != n:
            raise ValueError("degree mismatch")
        m = len(self.class_labels)
        img = np.empty(m, dtype=_INT)
        arr = p.images
        for c, members in enumerate(self.class_labels):
            targets = self._class_index[arr[np.asarray(members)]]
            if not np.all(targets == targets[0]):
                raise PreconditionError("element does not preserve the partition")
            img[c] = targets[0]
        return Permutation(img)

    def preimage(self, q: Permutation) -> Permutation:
        """Some source element mapping to ``q`` under the action."""
        n = self._source_degree
        m = len(self.class_labels)
        if q.degree != m:
            raise ValueError("degree mismatch with class count")
        w = q.images.copy()
        acc = np.arange(n + m, dtype=_INT)
        for lv in self._combined.levels[: self._prefix_len]:
            c = lv.point - n
            p = int(w[c])
            if p == c:
                continue
            pair = lv.transversal.get(n + p)
            if pair is None:
                raise PreconditionError("element is not in the image group")
            rep, rep_inv = pair
            w = (rep_inv[n:] - n)[w]
            acc = _compose(rep, acc)
        if not _is_identity(w):
            raise PreconditionError("element is not in the image group")
        source = Permutation._wrap(acc[:n].copy())
        return source


def action_on_partition(g: PermGroup, partition) -> ActionBundle:
    """Action of ``g`` on a g-invariant partition, with kernel generators.

    The kernel is extracted from a stabilizer chain of the combined action on
    points + classes whose base starts with a base of the induced image: the
    strong generators fixing that prefix are exactly the kernel.
    """
    n = g.degree
    classes = _validate_partition(partition, n)
    m = len(classes)
    class_index = np.empty(n, dtype=_INT)
    for c, members in enumerate(classes):
        class_index[list(members)] = c

    image_arrays = []
    for gen in g.generators:
        arr = gen.images
        img = np.empty(m, dtype=_INT)
        for c, members in enumerate(classes):
            targets = class_index[arr[np.asarray(members)]]
            if not np.all(targets == targets[0]):
                raise PreconditionError(
                    f"partition is not invariant under generator {gen!r}"
                )
            img[c] = targets[0]
        image_arrays.append(img)

    image_group = PermGroup(
        [Permutation(a) for a in image_arrays] or [Permutation.identity(m)], m
    )
    image_base = image_group.chain().base

    combined_gens = [
        np.concatenate([gen.images, img + n])
        for gen, img in zip(g.generators, image_arrays)
    ]
    combined = StabilizerChain(
        combined_gens, n + m, base_prefix=[n + b for b in image_base]
    )
    prefix_len = len(image_base)
    kernel_gens = [
        Permutation._wrap(arr[:n].copy())
        for arr in combined.stabilizer_generators(prefix_len)
    ]
    kernel = PermGroup(kernel_gens or [Permutation.identity(n)], n)

    if combined.order != g.order():
        raise RuntimeError("combined chain order mismatch (internal error)")
    if image_group.order() * kernel.order() != g.order():
        raise RuntimeError("|G| != |image| * |kernel| (internal error)")

    return ActionBundle(
        image_group=image_group,
        kernel=kernel,
        class_labels=tuple(classes),
        _class_index=class_index,
        _combined=combined,
        _prefix_len=prefix_len,
        _source_degree=n,
    )


# -- bounded structure computations ---------------------------------------


def _conjugacy_classes(g: PermGroup, bound: int):
    """All conjugacy classes as lists of image arrays (identity omitted)."""
    order = g.order()
    if order > bound:
        raise BoundExceededError(f"order {order} exceeds bound {bound}")
    gens = [p.images for p in g.generators]
    gen_invs = [_inverse(a) for a in gens]
    elements = []
    index: dict[bytes, int] = {}
    for arr in g.chain().iter_elements():
        key = arr.tobytes()
        index[key] = len(elements)
        elements.append(arr)
    visited = np.zeros(len(elements), dtype=bool)
    classes = []
    for start, arr in enumerate(elements):
        if visited[start] or _is_identity(arr):
            continue
        cls = [start]
        visited[start] = True
        queue = [arr]
        while queue:
            x = queue.pop()
            for ginv, gen in zip(gen_invs, gens):
                y = _compose(_compose(ginv, x), gen)
                idx = index[y.tobytes()]
                if not visited[idx]:
                    visited[idx] = True
                    cls.append(idx)
                    queue.append(elements[idx])
        classes.append([elements[i] for i in cls])
    return classes


def minimal_normal_subgroups(g: PermGroup, bound: int = DEFAULT_BOUND) -> list[PermGroup]:
    """All minimal normal subgroups of ``g``.

    Normal closures of conjugacy class representatives are computed (the class
    itself generates the closure), deduplicated, then filtered to the minimal
    ones under containment.
    """
    classes = _conjugacy_classes(g, bound)
    n = g.degree
    closures = []
    for cls in classes:
        sel: list[np.ndarray] = []
        chain = None
        for arr in cls:
            if chain is None or not chain.contains_array(arr):
                sel.append(arr)
                chain = StabilizerChain(sel, n)
        closures.append((chain.order, sel, chain))
    closures.sort(key=lambda t: t[0])
    distinct = []
    for order, sel, chain in closures:
        dup = False
        for order2, sel2, chain2 in distinct:
            if order2 == order and all(chain2.contains_array(a) for a in sel):
                dup = True
                break
        if not dup:
            distinct.append((order, sel, chain))
    minimal = []
    for order, sel, chain in distinct:
        is_min = True
        for order2, sel2, chain2 in distinct:
            if order2 < order and all(chain.contains_array(a) for a in sel2):
                is_min = False
                break
        if is_min:
            minimal.append(
                PermGroup([Permutation._wrap(a.copy()) for a in sel], n)
            )
    return minimal


def transitivity_class(g: PermGroup, bound: int = DEFAULT_BOUND) -> str:
    """One of intransitive / quasiprimitive / biquasiprimitive / neither.

    Quasiprimitive: every nontrivial normal subgroup is transitive.
    Biquasiprimitive: not quasiprimitive, but every nontrivial normal
    subgroup has at most two orbits. Both reduce to the minimal normal
    subgroups, since orbits only coarsen when the subgroup grows.
    """
    if not g.is_transitive():
        return "intransitive"
    mins = minimal_normal_subgroups(g, bound)
    orbit_counts = [len(n.orbit_partition()) for n in mins]
    if all(c == 1 for c in orbit_counts):
        return "quasiprimitive"
    if all(c <= 2 for c in orbit_counts):
        return "biquasiprimitive"
    return "neither"


def normalizer(g: PermGroup, h: PermGroup, bound: int = DEFAULT_BOUND) -> PermGroup:
    """N_G(H) by elementwise scan with conjugation membership tests."""
    if not is_subgroup(h, g):
        raise PreconditionError("H is not a subgroup of G")
    order = g.order()
    if order > bound:
        raise BoundExceededError(f"order {order} exceeds bound {bound}")
    h_chain = h.chain()
    h_gens = [p.images for p in h.generators]
    found: list[np.ndarray] = []
    chain = None
    for arr in g.chain().iter_elements():
        if _is_identity(arr):
            continue
        inv = _inverse(arr)
        if all(
            h_chain.contains_array(_compose(_compose(inv, x), arr))
            for x in h_gens
        ):
            if chain is None or not chain.contains_array(arr):
                found.append(arr)
                chain = StabilizerChain(found, g.degree)
    gens = [Permutation._wrap(a.copy()) for a in found]
    return PermGroup(gens or [Permutation.identity(g.degree)], g.degree)


# -- semiregular element machinery ----------------------------------------


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def semiregular_of_prime_power_degree(
    g: PermGroup, *, bound: int = DEFAULT_BOUND, seed: int = 0
) -> Permutation:
    """A semiregular element of order p in a transitive group of degree p^k.

    Builds a Sylow p-subgroup (adjoining p-parts of random elements while the
    subgroup stays a p-group, with a deterministic enumeration fallback), then
    powers a nontrivial central element down to order p. Centrality in a
    transitive group forces equal cycle lengths.
    """
    n = g.degree
    if not g.is_transitive():
        raise PreconditionError("group is not transitive")
    p = min(prime_factors(n))
    if not _is_p_power(n, p):
        raise PreconditionError(f"degree {n} is not a prime power")
    target = _p_part(g.order(), p)

    sylow_gens: list[np.ndarray] = []
    sylow_chain: StabilizerChain | None = None

    def try_adjoin(arr: np.ndarray) -> None:
        nonlocal sylow_chain
        if _is_identity(arr):
            return
        if sylow_chain is not None and sylow_chain.contains_array(arr):
            return
        cand = StabilizerChain(sylow_gens + [arr], n)
        if _is_p_power(cand.order, p):
            sylow_gens.append(arr)
            sylow_chain = cand

    rng = np.random.default_rng(seed)
    chain = g.chain()
    attempts = 0
    max_attempts = 200
    while (sylow_chain.order if sylow_chain else 1) < target and attempts < max_attempts:
        attempts += 1
        arr = chain.random_element(rng)
        perm = Permutation._wrap(arr)
        o = perm.order()
        a = _p_part(o, p)
        if a == 1:
            continue
        try_adjoin((perm ** (o // a)).images)
    if (sylow_chain.order if sylow_chain else 1) < target:
        # deterministic fallback: greedy over all p-elements
        order = g.order()
        if order > bound:
            raise BoundExceededError(
                f"order {order} exceeds bound {bound} for Sylow fallback"
            )
        progress = True
        while (sylow_chain.order if sylow_chain else 1) < target and progress:
            progress = False
            before = sylow_chain.order if sylow_chain else 1
            for el in g.elements(bound):
                o = el.order()
                if o > 1 and _is_p_power(o, p):
                    try_adjoin(el.images)
                    if sylow_chain.order == target:
                        break
            progress = (sylow_chain.order if sylow_chain else 1) > before
        if (sylow_chain.order if sylow_chain else 1) < target:
            raise RuntimeError("Sylow construction failed (internal error)")

    if sylow_chain.order > bound:
        raise BoundExceededError(
            f"Sylow subgroup order {sylow_chain.order} exceeds bound {bound}"
        )
    central = None
    for arr in sylow_chain.iter_elements():
        if _is_identity(arr):
            continue
        if all(
            np.array_equal(_compose(arr, s), _compose(s, arr))
            for s in sylow_gens
        ):
            central = Permutation._wrap(arr.copy())
            break
    if central is None:
        raise RuntimeError("p-group with trivial center (internal error)")
    o = central.order()
    result = central ** (o // p)
    if not result.is_semiregular() or result.order() != p:
        raise RuntimeError("central element not semiregular (internal error)")
    return result


def lift_semiregular(
    bundle: ActionBundle, source: PermGroup, image_element: Permutation, r: int
) -> Permutation:
    """Lift a semiregular image element of prime order r coprime to the kernel.

    Takes a preimage g and scans its powers of order r for semiregularity on
    the source points; the coprimality hypothesis guarantees a hit (if x^i
    fixes a point it fixes that point's class, forcing r | i).
    """
    if not is_prime(r):
        raise PreconditionError(f"r={r} is not prime")
    if image_element.order() != r:
        raise PreconditionError("image element does not have order r")
    if not image_element.is_semiregular():
        raise PreconditionError("image element is not semiregular")
    if not bundle.image_group.contains(image_element):
        raise PreconditionError("image element is not in the image group")
    k_order = bundle.kernel.order()
    if math.gcd(r, k_order) != 1:
        raise PreconditionError(f"r={r} is not coprime to |kernel|={k_order}")

    g = bundle.preimage(image_element)
    o = g.order()
    for j in range(1, o):
        if o // math.gcd(o, j) != r:
            continue
        x = g ** j
        if x.is_semiregular():
            if bundle.image_of(x) != image_element ** j:
                raise RuntimeError("lift image inconsistent (internal error)")
            if not source.contains(x):
                raise RuntimeError("lift left the source group (internal error)")
            return x
    raise RuntimeError(
        "no semiregular power found; contradicts the coprime lifting lemma"
    )

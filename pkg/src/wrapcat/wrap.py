"""Continuation systems, wrapping categories, HW colimits, the weak wrapped
Donaldson-Fukaya category, localization agreement, and morphisms of setups.

Strict mode demands all six continuation-set conditions; finite-approximation
mode waives the existence condition (v) at the outermost objects and the
countable-cofinality condition (vi) beyond "a finite cofinal chain exists",
always labelling waivers as such.
"""

from __future__ import annotations

from .ainf import AInfCategory, HCategory, cohomology_category
from .errors import (NonCofinalPrefix, NotAnInclusion, NotStabilized,
                     RestrictionMismatch, SystemInvalid)
from .floer import WeakFloerSetup, canonical_envelope
from .linalg import GradedMap, sequence_colimit
from .localization import (CSet, ContClass, FractionCategory, SliceCategory,
                           check_right_multiplicative_system, gz_localize,
                           h_graded_module, h_transition_map)
from .matrices import Matrix


def continuation_cset(setup: WeakFloerSetup, hcat: HCategory) -> CSet:
    """The setup's continuation classes (plus all units) as a CSet."""
    classes = []
    for (src, tgt, combo) in setup.continuation:
        classes.append((src, tgt, hcat.project_dict(src, tgt, 0, combo)))
    return CSet(hcat, classes)


def generating_subset(hcat: HCategory, cset: CSet):
    """Non-identity classes that are not composites of two other non-identity
    classes; cones over these span the same localization."""
    nonunits = [c for c in cset if not cset.is_identity(c)]
    composites = set()
    for a in nonunits:
        for b in nonunits:
            if a.tgt != b.src:
                continue
            comp = hcat.compose(a.src, a.tgt, b.tgt, 0, a.coords, 0, b.coords)
            if any(x != 0 for x in comp):
                composites.add(ContClass(a.src, b.tgt, comp).key())
    return [c for c in nonunits if c.key() not in composites]


def validate_continuation_system(setup: WeakFloerSetup, hcat: HCategory,
                                 cset: CSet, mode: str = "finite"):
    """Conditions (i)-(vi) of a continuation set, with witnesses.

    (vi) is interpreted as "a finite cofinal chain exists in the given data";
    the reinterpretation is logged in the verdict, and in strict mode the gap
    is noted rather than resolved.
    """
    base = check_right_multiplicative_system(hcat, cset)
    report = {"mode": mode, "conditions": {}, "waivers": [],
              "warnings": base["warnings"]}
    for key in ("i", "ii", "iii", "iv"):
        fails = base["failures"][key]
        report["conditions"][key] = {"passed": not fails, "failures": fails}
    v_fails = []
    for l in hcat.objects:
        if not any(c.tgt == l and c.src != l for c in cset):
            v_fails.append({"object": l,
                            "reason": "no continuation map from a distinct "
                                      "Lagrangian"})
    if mode == "strict":
        report["conditions"]["v"] = {"passed": not v_fails, "failures": v_fails}
    else:
        report["conditions"]["v"] = {"passed": True, "failures": []}
        for f in v_fails:
            report["waivers"].append({"condition": "v", **f,
                                      "note": "finite-approximation waiver"})
    vi_fails = []
    for l in hcat.objects:
        sl = SliceCategory(hcat, cset, l)
        if sl.weakly_terminal_index() is None:
            vi_fails.append({"object": l, "reason": "no finite cofinal chain"})
    report["conditions"]["vi"] = {
        "passed": not vi_fails, "failures": vi_fails,
        "note": "cofinal countability reinterpreted as the existence of a "
                "finite cofinal chain in the supplied data"}
    report["passed"] = all(c["passed"] for c in report["conditions"].values())
    return report


class WrappingCategory:
    """The filtered category of continuation maps into one object, with a
    deterministically chosen cofinal chain."""

    def __init__(self, hcat: HCategory, cset: CSet, obj, depth: int = 4,
                 chain_hint=None):
        self.hcat = hcat
        self.cset = cset
        self.obj = obj
        self.slice = SliceCategory(hcat, cset, obj)
        self.filtered, self.filtered_notes = self.slice.is_filtered()
        if chain_hint:
            self.chain_indices, self.chain_morphisms = self._chain_from_hint(
                chain_hint, depth)
        else:
            self.chain_indices, self.chain_morphisms = self.slice.chain(depth)
        self.cofinal_certified = self._certify_chain()

    def _chain_from_hint(self, sources, depth):
        """Chain from a list of source Lagrangians (shortest-then-lex class
        per step), truncated to the depth and padded by identity
        endomorphisms."""
        sources = list(sources)[:depth + 1]
        indices = []
        for src in sources:
            match = [i for i, c in enumerate(self.slice.objects) if c.src == src]
            if not match:
                raise NonCofinalPrefix(
                    f"no continuation class {src} -> {self.obj} in the data")
            indices.append(match[0])
        morphs = []
        for a, b in zip(indices, indices[1:]):
            options = self.slice.morphisms.get((a, b), [])
            if not options:
                raise NonCofinalPrefix(
                    f"no factorization morphism between chain steps "
                    f"{a} -> {b} over {self.obj}")
            morphs.append(sorted(options, key=lambda e: e.key())[0])
        last = indices[-1]
        last_src = self.slice.objects[last].src
        eid = ContClass(last_src, last_src, self.hcat.identity_coords[last_src])
        while len(indices) < depth + 1:
            indices.append(last)
            morphs.append(eid)
        return indices, morphs

    def _certify_chain(self):
        """Whether every slice object maps into the chain tail (an honest
        prefix is allowed: the colimit then carries a not-stabilized flag)."""
        tail = self.chain_indices[-1]
        return all((i, tail) in self.slice.morphisms
                   for i in range(len(self.slice.objects)))

    def chain_sources(self):
        return [self.slice.objects[i].src for i in self.chain_indices]

    def hw_module(self, target, window: int = 2):
        """Sequence colimit of H(chain source, target) along the chain."""
        mods = [h_graded_module(self.hcat, self.slice.objects[i].src, target,
                                tag=f"{n}:{self.slice.objects[i].src}>{target}")
                for n, i in enumerate(self.chain_indices)]
        maps = []
        for n, e in enumerate(self.chain_morphisms):
            maps.append(h_transition_map(self.hcat, e, target,
                                         mods[n], mods[n + 1]))
        return sequence_colimit(mods, maps, window)


class WrappedDFCategory:
    """Objects are the Lagrangians; homs are the HW colimits with fraction
    composition; per-pair stabilization certificates from the chosen chains."""

    def __init__(self, setup: WeakFloerSetup, env: AInfCategory, hcat: HCategory,
                 cset: CSet, depth: int = 4, require_stabilized: bool = False,
                 validation=None):
        self.setup = setup
        self.env = env
        self.hcat = hcat
        self.cset = cset
        self.frac = FractionCategory(hcat, cset, depth=depth,
                                     strict_system=True, validation=validation)
        self.wrapping = {}
        self.stabilization = {}
        for l in hcat.objects:
            hint = setup.wrap_chains.get(l)
            self.wrapping[l] = WrappingCategory(hcat, cset, l, depth=depth,
                                                chain_hint=hint)
        for l in hcat.objects:
            certified = self.wrapping[l].cofinal_certified
            for k in hcat.objects:
                colim, _, stab = self.wrapping[l].hw_module(k)
                cross = self.frac.rank_map(l, k)
                if certified and colim.rank_map() != cross:
                    raise NonCofinalPrefix(
                        f"chain colimit for ({l},{k}) disagrees with the slice "
                        f"colimit: {colim.rank_map()} vs {cross}")
                self.stabilization[(l, k)] = stab and certified
        unstab = sorted(p for p, s in self.stabilization.items() if not s)
        if require_stabilized and unstab:
            raise NotStabilized(f"HW not stabilized for pairs: {unstab}")

    def hw_rank_map(self, l, k):
        return self.frac.rank_map(l, k)

    def stabilized(self, l, k):
        return self.stabilization[(l, k)]

    def hw_table(self):
        rows = []
        for l in self.hcat.objects:
            for k in self.hcat.objects:
                rows.append({"pair": [l, k],
                             "ranks": {str(d): r for d, r in
                                       sorted(self.hw_rank_map(l, k).items())},
                             "stabilized": self.stabilized(l, k)})
        return rows

    def verify_category_axioms(self):
        return self.frac.verify_axioms()

    def check_right_locality(self):
        """Post-composition with every continuation class is a bijection on
        every stabilized HW module."""
        failures = []
        ring = self.hcat.ring
        for c in self.cset:
            if self.cset.is_identity(c):
                continue
            gamma_c = self.frac.gamma(c.src, c.tgt, 0, c.coords)
            for l in self.hcat.objects:
                if not (self.stabilized(l, c.src) and self.stabilized(l, c.tgt)):
                    continue
                src_cl = self.frac.colim(l, c.src)
                for d in sorted(src_cl.by_degree):
                    n = src_cl.degree(d).class_count
                    cols = []
                    for i in range(n):
                        u = tuple(ring.one() if t == i else ring.zero()
                                  for t in range(n))
                        cols.append(self.frac.compose(l, c.src, c.tgt, d, u,
                                                      0, gamma_c))
                    m = Matrix.from_columns(
                        ring, cols, self.frac.colim(l, c.tgt).degree(d).class_count)
                    ok = (m.rows == m.cols and (m.rows == 0 or m.rank() == m.rows))
                    if not ok:
                        failures.append({"class": repr(c), "object": l,
                                         "degree": d})
        return {"passed": not failures, "failures": failures}

    def check_canonical_functor(self):
        """H F -> H W_DF sends continuation classes to isomorphisms and
        respects composition on basis classes."""
        failures = []
        for c in self.cset:
            if self.cset.is_identity(c):
                continue
            res = self.frac.check_inverts(c)
            if not res["passed"]:
                failures.append({"class": repr(c), "reason": "not inverted"})
        return {"passed": not failures, "failures": failures}


def wrapped_df_category(setup, env, hcat, cset, depth: int = 4,
                        require_stabilized: bool = False,
                        validation=None) -> WrappedDFCategory:
    return WrappedDFCategory(setup, env, hcat, cset, depth=depth,
                             require_stabilized=require_stabilized,
                             validation=validation)


def check_localization_agreement(setup, env, hcat, cset, depth: int = 4,
                                 wdf: WrappedDFCategory = None):
    """Compare the cone-quotient localization against the HW table.

    H^0 ranks are compared exactly on pairs where the quotient certificate
    holds (with per-pair progressive deepening up to ``depth``), together
    with the kernel of the comparison maps out of H^0 of the envelope.
    """
    from .quotient import localize_by_cones

    if wdf is None:
        wdf = wrapped_df_category(setup, env, hcat, cset, depth=depth)
    gens = generating_subset(hcat, cset)
    w_classes = [(c.src, c.tgt, c.coords) for c in gens]
    objects = list(env.objects)
    pending = [(a, b) for a in objects for b in objects]
    results = {}
    quos = {}
    d = 2
    while pending and d <= depth:
        quo, _ = localize_by_cones(env, hcat, w_classes, depth=d,
                                   pairs=pending, check_relations=False)
        quos[d] = quo
        still = []
        for (a, b) in pending:
            if quo.stabilized(a, b):
                hw0 = wdf.hw_rank_map(a, b).get(0, 0)
                results[(a, b)] = (quo.h0_rank(a, b), d)
                # an early plateau disagreeing with a certified HW rank is
                # re-deepened: the certificate is empirical, never a claim
                if wdf.stabilized(a, b) and quo.h0_rank(a, b) != hw0 and d < depth:
                    still.append((a, b))
            else:
                still.append((a, b))
        pending = still
        d += 1
    rows = []
    passed = True
    for a in objects:
        for b in objects:
            hw0 = wdf.hw_rank_map(a, b).get(0, 0)
            entry = {"pair": [a, b], "hw_h0": hw0,
                     "hw_stabilized": wdf.stabilized(a, b)}
            if (a, b) in results:
                q0, dst = results[(a, b)]
                entry.update({"quotient_h0": q0, "depth": dst,
                              "quotient_stabilized": True})
                if wdf.stabilized(a, b):
                    ok = (q0 == hw0)
                    entry["agree"] = ok
                    if not ok:
                        passed = False
                else:
                    entry["agree"] = None
                    entry["note"] = "HW not stabilized; not compared"
            else:
                entry.update({"quotient_stabilized": False, "agree": None})
            rows.append(entry)
    kernel_rows = []
    for a in objects:
        for b in objects:
            if (a, b) not in results:
                continue
            dloc = results[(a, b)][1]
            quo = quos[dloc]
            try:
                locmap = quo.localization_map(a, b)
            except KeyError:
                continue
            ring = hcat.ring
            n = hcat.class_count(a, b, 0)
            ker_match = True
            for i in range(n):
                u = tuple(ring.one() if t == i else ring.zero() for t in range(n))
                gz = wdf.frac.gamma(a, b, 0, u)
                lz = locmap.apply(0, u)
                gz_zero = not any(x != 0 for x in gz)
                lz_zero = not any(x != 0 for x in lz)
                if gz_zero != lz_zero:
                    ker_match = False
            kernel_rows.append({"pair": [a, b], "kernels_match": ker_match})
            if not ker_match:
                passed = False
    return {"passed": passed, "pairs": rows, "comparison_maps": kernel_rows,
            "cone_classes": [repr(c) for c in gens]}


def check_wawfs_morphism(src_setup: WeakFloerSetup, src_env, src_h, src_cset,
                         tgt_setup: WeakFloerSetup, tgt_env, tgt_h, tgt_cset,
                         depth: int = 4):
    """Morphism of weak setups: inclusion of the pre-categories, restriction
    condition on continuation sets, induced HW map on stabilized pairs."""
    src_objs = set(src_setup.lagrangians)
    if not src_objs <= set(tgt_setup.lagrangians):
        raise NotAnInclusion("source Lagrangians are not a subset")
    for k in sorted(src_setup.composable):
        for t in src_setup.tuples(k):
            if t not in tgt_setup.composable.get(k, ()):
                raise NotAnInclusion(f"composable tuple {t} missing in target")
    for (l, k) in src_setup.tuples(1):
        if src_setup.cf_module(l, k) != tgt_setup.cf_module(l, k):
            raise NotAnInclusion(f"CF({l},{k}) differs")
    for t in src_setup.all_tuples():
        if sorted(src_setup.mu_entries(t)) != sorted(tgt_setup.mu_entries(t)):
            raise NotAnInclusion(f"operations differ on {t}")
    # restriction condition on continuation classes
    src_keys = {c.key() for c in src_cset}
    for c in tgt_cset:
        if c.src in src_objs and c.tgt in src_objs:
            if ContClass(c.src, c.tgt, c.coords).key() not in src_keys:
                raise RestrictionMismatch(
                    f"target class {c!r} between source Lagrangians is not "
                    f"in the source set")
    for c in src_cset:
        if not tgt_cset.contains(c.src, c.tgt, c.coords):
            raise RestrictionMismatch(f"source class {c!r} missing in target")
    src_wdf = wrapped_df_category(src_setup, src_env, src_h, src_cset, depth=depth)
    tgt_wdf = wrapped_df_category(tgt_setup, tgt_env, tgt_h, tgt_cset, depth=depth)
    rows = []
    passed = True
    for l in src_setup.lagrangians:
        for k in src_setup.lagrangians:
            if not (src_wdf.stabilized(l, k) and tgt_wdf.stabilized(l, k)):
                continue
            sr = src_wdf.hw_rank_map(l, k)
            tr = tgt_wdf.hw_rank_map(l, k)
            ok = (sr == tr)
            rows.append({"pair": [l, k], "src_ranks": sr, "tgt_ranks": tr,
                         "ranks_agree": ok})
            if not ok:
                passed = False
    return {"passed": passed, "induced_hw": rows}

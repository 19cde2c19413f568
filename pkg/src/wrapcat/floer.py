"""Weak abstract Floer setups: the axiomatic data model, exhaustive
validators, compatible-collection choice, canonical envelopes and the
Donaldson-Fukaya pre-category.

Two input profiles: "envelope" carries a single chosen datum's worth of
operations (enough for the wrapping computations); "full" carries the
entire system of Floer-data sets with restriction maps, the alpha/beta/
gamma coherence data and the diagonal section, enough for the
independence certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .ainf import AInfCategory, HCategory, check_ainf_relations, _merge
from .errors import (AlphaMissing, CertificateMissing, NoSection,
                     ValidationRequired)
from .linalg import (Complex, GradedMap, GradedModule, cohomology,
                     induced_cohomology_map)


def tuple_key(t):
    return ",".join(t)


def subsequences(t, min_len=2):
    """Proper subsequences of length >= min_len, in canonical order."""
    out = []
    n = len(t)
    for l in range(min_len, n):
        for idx in combinations(range(n), l):
            out.append(tuple(t[i] for i in idx))
    return out


@dataclass
class FloerDataSystem:
    """Full-profile data: D sets with restriction maps, operations per datum,
    the alpha/beta/gamma coherence data and the diagonal map f."""

    D: dict = field(default_factory=dict)             # tuple -> [datum ids]
    restrictions: dict = field(default_factory=dict)  # (tuple, subtuple) -> {id: id}
    mu: dict = field(default_factory=dict)            # (tuple, id) -> [(inputs, output, scalar)]
    Dprime: dict = field(default_factory=dict)        # pair -> [(id, (d1, d2))]
    alpha: dict = field(default_factory=dict)         # (pair, dp_id) -> [(in, out, scalar)]
    Dsecond: dict = field(default_factory=dict)       # pair -> [(id, (ac, ab, bc))]
    beta: dict = field(default_factory=dict)          # (pair, ds_id) -> [(in, out, scalar)]
    Dthird: dict = field(default_factory=dict)        # (triple, i) -> [(id, datum, datum_i, dp)]
    gamma: dict = field(default_factory=dict)         # (triple, i, id) -> [((in1, in2), out, scalar)]
    f: dict = field(default_factory=dict)             # pair -> {datum: dp_id}
    sections: dict = field(default_factory=dict)      # tuple -> {family_key: datum}

    def restrict(self, t, sub, datum):
        if t == sub:
            return datum
        return self.restrictions.get((t, sub), {}).get(datum)

    def dprime_pair(self, pair, dp_id):
        for (i, pr) in self.Dprime.get(pair, ()):
            if i == dp_id:
                return pr
        return None


def family_key(assignment):
    """Canonical key of a compatible family: sorted subtuple -> datum."""
    return ";".join(f"{tuple_key(t)}:{d}" for t, d in sorted(assignment.items()))


class WeakFloerSetup:
    """Lagrangian set, composable tuples, CF modules, operations."""

    def __init__(self, ring, lagrangians, composable_mode="all-distinct",
                 composable_tuples=None, max_arity=3, cf=None, profile="envelope",
                 envelope_ops=None, data_system=None, continuation=(),
                 wrap_chains=None, oracle=None, name="setup"):
        self.ring = ring
        self.name = name
        self.lagrangians = tuple(lagrangians)
        self.composable_mode = composable_mode
        self.max_arity = int(max_arity)
        self.profile = profile
        self.cf = dict(cf or {})
        self.envelope_ops = dict(envelope_ops or {})  # tuple -> [(inputs, out, scalar)]
        self.data_system = data_system
        self.continuation = list(continuation)        # (src, tgt, combo dict)
        self.wrap_chains = dict(wrap_chains or {})
        self.oracle = dict(oracle or {})
        if composable_mode == "all-distinct":
            self.composable = {}
            for k in range(1, self.max_arity + 1):
                self.composable[k] = set(
                    t for t in permutations(self.lagrangians, k + 1))
        else:
            self.composable = {int(k): set(map(tuple, v))
                               for k, v in (composable_tuples or {}).items()}

    def tuples(self, k):
        return sorted(self.composable.get(k, ()))

    def all_tuples(self):
        out = []
        for k in sorted(self.composable):
            out.extend(self.tuples(k))
        return out

    def cf_module(self, l, k) -> GradedModule:
        mod = self.cf.get((l, k))
        return mod if mod is not None else GradedModule.zero(self.ring)

    def mu_entries(self, t, datum=None):
        """Operation entries for a composable tuple and a datum (envelope
        profile carries exactly one datum's operations)."""
        if self.profile == "envelope" or self.data_system is None:
            return self.envelope_ops.get(t, [])
        return self.data_system.mu.get((t, datum), [])


@dataclass
class CompatibleCollection:
    """A restriction-coherent choice of one datum per composable tuple."""

    delta: dict  # tuple -> datum id

    def datum(self, t):
        return self.delta.get(t)


# -- validators ---------------------------------------------------------------------


def validate_setup(s: WeakFloerSetup, mode: str = "finite"):
    """Per-axiom report.  The envelope profile checks (i)-(iii) and the
    relations (vi) for the supplied datum; the full profile checks all of
    (i)-(ix).  Strict mode additionally notes the finiteness reinterpretation
    of the countability axioms."""
    report = {"setup": s.name, "profile": s.profile, "mode": mode, "axioms": {}}

    def axiom(name, failures, notes=None):
        report["axioms"][name] = {"passed": not failures, "failures": failures,
                                  "notes": notes or []}

    # (i) Lagrangian labels
    fails = []
    if len(set(s.lagrangians)) != len(s.lagrangians):
        fails.append({"reason": "duplicate Lagrangian labels"})
    axiom("i-lagrangians", fails)

    # (ii) closure: subsequences, permutations, pairwise distinct
    fails = []
    for k in sorted(s.composable):
        for t in s.tuples(k):
            if len(set(t)) != len(t):
                fails.append({"tuple": list(t), "reason": "repeated Lagrangian"})
            for sub in subsequences(t, min_len=2):
                l = len(sub) - 1
                if sub not in s.composable.get(l, ()):
                    fails.append({"tuple": list(t), "missing-subsequence": list(sub)})
            for perm in permutations(t):
                if perm not in s.composable.get(k, ()):
                    fails.append({"tuple": list(t), "missing-permutation": list(perm)})
                    break
    axiom("ii-composability", fails)

    # (iii) CF modules for composable pairs
    fails, notes = [], []
    for (l, k) in s.tuples(1):
        if (l, k) not in s.cf:
            notes.append({"pair": [l, k], "note": "absent CF treated as zero"})
    axiom("iii-cf-modules", fails, notes)

    # (vi) A-infinity relations of the operation families
    fails = []
    if s.profile == "envelope" or s.data_system is None:
        fails = _family_relation_failures(s, None)
    else:
        for k in sorted(s.composable):
            for t in s.tuples(k):
                for datum in s.data_system.D.get(t, ()):
                    fails.extend(_family_relation_failures(s, (t, datum)))
    axiom("vi-relations", fails)

    if s.profile == "full" and s.data_system is not None:
        ds = s.data_system
        # (iv) restriction functoriality
        fails = []
        for t in s.all_tuples():
            if len(t) < 3:
                continue
            for sub in subsequences(t, min_len=2):
                for subsub in subsequences(sub, min_len=2):
                    for datum in ds.D.get(t, ()):
                        direct = ds.restrict(t, subsub, datum)
                        via = ds.restrict(sub, subsub, ds.restrict(t, sub, datum))
                        if direct != via:
                            fails.append({"tuple": list(t), "via": list(sub),
                                          "to": list(subsub), "datum": datum})
        axiom("iv-restrictions", fails)

        # (v) contractibility via sections
        fails = []
        for t in s.all_tuples():
            if len(t) == 2:
                if not ds.D.get(t):
                    fails.append({"tuple": list(t), "reason": "empty D set"})
                continue
            for fam in _compatible_families(s, t):
                key = family_key(fam)
                witness = ds.sections.get(t, {}).get(key)
                if witness is None:
                    fails.append({"tuple": list(t), "family": key,
                                  "reason": "no section witness"})
                    continue
                for sub, datum in fam.items():
                    if ds.restrict(t, sub, witness) != datum:
                        fails.append({"tuple": list(t), "family": key,
                                      "witness": witness,
                                      "reason": f"witness does not restrict to "
                                                f"{tuple_key(sub)}"})
        axiom("v-contractibility", fails)

        # (vii) structure-map surjectivity
        fails = []
        for pair in s.tuples(1):
            data = list(ds.D.get(pair, ()))
            hit = {pr for (_, pr) in ds.Dprime.get(pair, ())}
            for d1 in data:
                for d2 in data:
                    if (d1, d2) not in hit:
                        fails.append({"pair": list(pair),
                                      "missing-Dprime-over": [d1, d2]})
            prime_ids = [i for (i, _) in ds.Dprime.get(pair, ())]
            prime_of = dict(ds.Dprime.get(pair, ()))
            hit2 = {tr for (_, tr) in ds.Dsecond.get(pair, ())}
            for ac in prime_ids:
                for ab in prime_ids:
                    for bc in prime_ids:
                        a1, c1 = prime_of[ac]
                        a2, b2 = prime_of[ab]
                        b3, c3 = prime_of[bc]
                        if a1 == a2 and b2 == b3 and c1 == c3:
                            if (ac, ab, bc) not in hit2:
                                fails.append({"pair": list(pair),
                                              "missing-Dsecond-over": [ac, ab, bc]})
        axiom("vii-structure-surjectivity", fails)

        # (viii) alpha chain maps, beta and gamma homotopy identities
        fails = []
        for pair in s.tuples(1):
            mod = s.cf_module(*pair)
            for (dp_id, (d1, d2)) in ds.Dprime.get(pair, ()):
                a_map = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, dp_id), ()))
                err = _chain_map_defect(s, pair, d1, d2, a_map)
                if err:
                    fails.append({"pair": list(pair), "alpha": dp_id, "defect": err})
            for (ds_id, (ac, ab, bc)) in ds.Dsecond.get(pair, ()):
                b_map = _entries_map(s, mod, mod, -1, ds.beta.get((pair, ds_id), ()))
                err = _beta_defect(s, pair, ac, ab, bc, b_map)
                if err:
                    fails.append({"pair": list(pair), "beta": ds_id, "defect": err})
        for (triple, i), elems in sorted(ds.Dthird.items()):
            for (g_id, datum, datum_i, dp_id) in elems:
                err = _gamma_defect(s, triple, i, g_id, datum, datum_i, dp_id)
                if err:
                    fails.append({"triple": list(triple), "i": i, "gamma": g_id,
                                  "defect": err})
        axiom("viii-homotopy-data", fails)

        # (ix) diagonal and identity conditions for f
        fails = []
        for pair in s.tuples(1):
            fmap = ds.f.get(pair, {})
            mod = s.cf_module(*pair)
            for datum in ds.D.get(pair, ()):
                dp_id = fmap.get(datum)
                if dp_id is None:
                    fails.append({"pair": list(pair), "datum": datum,
                                  "reason": "f undefined"})
                    continue
                pr = ds.dprime_pair(pair, dp_id)
                if pr != (datum, datum):
                    fails.append({"pair": list(pair), "datum": datum,
                                  "reason": "f does not hit the diagonal"})
                a_map = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, dp_id), ()))
                if a_map != GradedMap.identity(mod):
                    fails.append({"pair": list(pair), "datum": datum,
                                  "reason": "alpha over f(datum) is not the identity"})
        axiom("ix-diagonal", fails)

    if mode == "strict":
        report["notes"] = ["countability axioms reinterpreted as finiteness "
                           "at desk scale"]
    report["passed"] = all(v["passed"] for v in report["axioms"].values())
    return report


def _compatible_families(s: WeakFloerSetup, t):
    """Compatible data families over the proper subsequences of t."""
    ds = s.data_system
    subs = [x for x in subsequences(t, min_len=2)]
    if not subs:
        return [dict()]
    choices = [list(ds.D.get(sub, ())) for sub in subs]
    out = []
    for combo in product(*choices):
        fam = dict(zip(subs, combo))
        ok = True
        for sub, datum in fam.items():
            for subsub in subsequences(sub, min_len=2):
                if ds.restrict(sub, subsub, datum) != fam.get(subsub):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(fam)
    return out


def _entries_map(s, src: GradedModule, tgt: GradedModule, degree, entries):
    if degree == 0 and not entries and src == tgt:
        return GradedMap.zero(src, tgt, 0)
    return GradedMap.from_entries(src, tgt, degree,
                                  [(i, o, s.ring.parse_scalar(v)
                                    if isinstance(v, str) else v)
                                   for (i, o, v) in entries])


def _pair_differential(s: WeakFloerSetup, pair, datum) -> GradedMap:
    mod = s.cf_module(*pair)
    entries = []
    for (inputs, out, scalar) in s.mu_entries(pair, datum):
        entries.append((inputs[0], out, scalar))
    return GradedMap.from_entries(mod, mod, 1, entries)


def _chain_map_defect(s, pair, d1, d2, a_map: GradedMap):
    dd1 = _pair_differential(s, pair, d1)
    dd2 = _pair_differential(s, pair, d2)
    from .linalg import compose_graded_maps
    lhs = compose_graded_maps(dd1, a_map)
    rhs = compose_graded_maps(a_map, dd2)
    if lhs != rhs:
        return "alpha fails to intertwine the differentials"
    return None


def _beta_defect(s, pair, ac, ab, bc, b_map: GradedMap):
    """d beta + beta d = alpha_bc . alpha_ab - alpha_ac, exactly."""
    from .linalg import compose_graded_maps
    ds = s.data_system
    mod = s.cf_module(*pair)
    a1, c1 = ds.dprime_pair(pair, ac)
    a2, b2 = ds.dprime_pair(pair, ab)
    _, c3 = ds.dprime_pair(pair, bc)
    d_src = _pair_differential(s, pair, a1)
    d_tgt = _pair_differential(s, pair, c1)
    alpha_ab = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, ab), ()))
    alpha_bc = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, bc), ()))
    alpha_ac = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, ac), ()))
    comp = compose_graded_maps(alpha_ab, alpha_bc)
    target = comp.add(alpha_ac.scale(s.ring.normalize(-1)))
    lhs = compose_graded_maps(b_map, d_tgt).add(compose_graded_maps(d_src, b_map))
    if lhs != target:
        return "d beta + beta d differs from alpha.alpha - alpha"
    return None


def _gamma_defect(s, triple, i, g_id, datum, datum_i, dp_id):
    """Chain-homotopy identity for gamma: between mu2 of one datum and the
    alpha-twisted mu2 of another, checked elementwise on basis pairs."""
    ring = s.ring
    ds = s.data_system
    l0, l1, l2 = triple
    m01, m12, m02 = (s.cf_module(l0, l1), s.cf_module(l1, l2), s.cf_module(l0, l2))
    gamma_entries = ds.gamma.get((triple, i, g_id), ())

    def mu2(dat):
        table = {}
        for (inputs, out, scalar) in s.mu_entries(triple, dat):
            table.setdefault(tuple(inputs), {})
            _merge(table[tuple(inputs)], out,
                   ring.parse_scalar(scalar) if isinstance(scalar, str) else scalar,
                   ring)
        return table

    def gamma_apply(x_lab, y_lab):
        out = {}
        for ((i1, i2), o, v) in gamma_entries:
            if (i1, i2) == (x_lab, y_lab):
                _merge(out, o, ring.parse_scalar(v) if isinstance(v, str) else v,
                       ring)
        return out

    pair_of = {0: (l0, l1), 1: (l1, l2), 2: (l0, l2)}[i]
    alpha = _entries_map(s, s.cf_module(*pair_of), s.cf_module(*pair_of), 0,
                         ds.alpha.get((pair_of, dp_id), ()))
    mu_a = mu2(datum)
    mu_b = mu2(datum_i)
    d01 = _pair_differential(s, (l0, l1), ds.restrict(triple, (l0, l1), datum))
    d12 = _pair_differential(s, (l1, l2), ds.restrict(triple, (l1, l2), datum))
    d02 = _pair_differential(s, (l0, l2), ds.restrict(triple, (l0, l2), datum))
    for dx in m01.degrees():
        for x in m01.labels(dx):
            for dy in m12.degrees():
                for y in m12.labels(dy):
                    target = dict(mu_a.get((x, y), {}))
                    if i == 0:
                        ax = alpha.apply_label(x)
                        for lx, vx in ax.items():
                            for o, vo in mu_b.get((lx, y), {}).items():
                                _merge(target, o,
                                       ring.neg(ring.mul(vx, vo)), ring)
                    elif i == 1:
                        ay = alpha.apply_label(y)
                        for ly, vy in ay.items():
                            for o, vo in mu_b.get((x, ly), {}).items():
                                _merge(target, o,
                                       ring.neg(ring.mul(vy, vo)), ring)
                    else:
                        for o, vo in mu_b.get((x, y), {}).items():
                            for o2, va in alpha.apply_label(o).items():
                                _merge(target, o2,
                                       ring.neg(ring.mul(vo, va)), ring)
                    lhs = {}
                    for o, vo in gamma_apply(x, y).items():
                        for o2, vd in d02.apply_label(o).items():
                            _merge(lhs, o2, ring.mul(vo, vd), ring)
                    for lx, vx in d01.apply_label(x).items():
                        for o, vo in gamma_apply(lx, y).items():
                            _merge(lhs, o, ring.mul(vx, vo), ring)
                    sgn = ring.one() if dx % 2 == 0 else ring.normalize(-1)
                    for ly, vy in d12.apply_label(y).items():
                        for o, vo in gamma_apply(x, ly).items():
                            _merge(lhs, o, ring.mul(sgn, ring.mul(vy, vo)), ring)
                    diff = dict(target)
                    for o, v in lhs.items():
                        _merge(diff, o, ring.neg(v), ring)
                    if diff:
                        return (f"gamma identity fails on ({x},{y})")
    return None


def _family_relation_failures(s: WeakFloerSetup, top):
    """A-infinity relations of one operation family, via the envelope check.

    For the envelope profile (top None) this checks the single supplied
    family; for full profiles the family is generated by restricting the
    top datum.
    """
    delta = None
    if top is not None:
        t, datum = top
        delta = {}
        delta[t] = datum
        for sub in subsequences(t, min_len=2):
            delta[sub] = s.data_system.restrict(t, sub, datum)
        cat = _envelope_for(s, lambda tt: delta.get(tt))
        arity = len(t) - 1
    else:
        cat = _envelope_for(s, None)
        arity = max([k for k in s.composable] + [1])
    rep = check_ainf_relations(cat, min(arity + 1, 4))
    return rep["violations"]


def _envelope_for(s: WeakFloerSetup, datum_of) -> AInfCategory:
    ring = s.ring
    homs = {}
    units = {}
    for l in s.lagrangians:
        homs[(l, l)] = GradedModule.from_generators(ring, [(f"1@{l}", 0)])
        units[l] = {f"1@{l}": ring.one()}
    for (l, k) in s.tuples(1):
        mod = s.cf_module(l, k)
        if not mod.is_zero():
            homs[(l, k)] = mod
    cat = AInfCategory(ring, s.lagrangians, homs, units, name=s.name)
    for kk in sorted(s.composable):
        for t in s.tuples(kk):
            datum = datum_of(t) if datum_of else None
            for (inputs, out, scalar) in s.mu_entries(t, datum):
                val = ring.parse_scalar(scalar) if isinstance(scalar, str) else scalar
                cat.add_op_entry(t, tuple(inputs), out, val)
    cat.add_unit_entries()
    return cat


# -- constructions --------------------------------------------------------------------


def choose_compatible_collection(s: WeakFloerSetup, strategy="lexicographic",
                                 seed=None) -> CompatibleCollection:
    """Choose one datum per composable tuple, by induction on tuple length,
    using the surjectivity sections for the inductive step."""
    if s.profile != "full" or s.data_system is None:
        delta = {t: None for t in s.all_tuples()}
        return CompatibleCollection(delta)
    ds = s.data_system
    rotate = int(seed) if strategy == "seeded" and seed is not None else 0
    delta = {}
    for k in sorted(s.composable):
        for t in s.tuples(k):
            options = list(ds.D.get(t, ()))
            if not options:
                raise NoSection(f"D({tuple_key(t)}) is empty")
            if k == 1:
                delta[t] = options[rotate % len(options)]
                continue
            fam = {sub: delta[sub] for sub in subsequences(t, min_len=2)}
            key = family_key(fam)
            witness = ds.sections.get(t, {}).get(key)
            if witness is None:
                raise NoSection(
                    f"no section witness for {tuple_key(t)} over family {key}")
            delta[t] = witness
    return CompatibleCollection(delta)


def check_collection_compatible(s: WeakFloerSetup, col: CompatibleCollection):
    if s.profile != "full" or s.data_system is None:
        return True
    for t in s.all_tuples():
        if len(t) < 3:
            continue
        for sub in subsequences(t, min_len=2):
            if s.data_system.restrict(t, sub, col.datum(t)) != col.datum(sub):
                return False
    return True


def canonical_envelope(s: WeakFloerSetup, col: CompatibleCollection = None,
                       validated=True) -> AInfCategory:
    """The strictly unital envelope: CF homs on composable pairs, adjoined
    rank-1 units, zero elsewhere, operations from the chosen collection."""
    if not validated:
        raise ValidationRequired("validate the setup before building the envelope")
    if col is None:
        col = choose_compatible_collection(s)
    return _envelope_for(s, col.datum)


# -- Donaldson-Fukaya pre-category -----------------------------------------------------


class DFPreCategory:
    """Homotopy classes of the CF complexes with composition tables and the
    alpha-isomorphism certificates between the data choices."""

    def __init__(self, s: WeakFloerSetup):
        if s.profile != "full" or s.data_system is None:
            raise CertificateMissing("the DF pre-category needs the full profile")
        self.setup = s
        ds = s.data_system
        ring = s.ring
        self.h = {}            # (pair, datum) -> CohomologyPresentation
        self.rep_datum = {}    # pair -> lex-first datum
        self.alpha_iso = {}    # (pair, d1, d2) -> HMap
        for pair in s.tuples(1):
            mod = s.cf_module(*pair)
            data = list(ds.D.get(pair, ()))
            if not data:
                raise CertificateMissing(f"D({tuple_key(pair)}) empty")
            self.rep_datum[pair] = data[0]
            for datum in data:
                cx = Complex(mod, _pair_differential(s, pair, datum))
                self.h[(pair, datum)] = cohomology(cx)
            for d1 in data:
                for d2 in data:
                    dp = None
                    for (dp_id, pr) in ds.Dprime.get(pair, ()):
                        if pr == (d1, d2):
                            dp = dp_id
                            break
                    if dp is None:
                        raise CertificateMissing(
                            f"no Dprime element over ({d1},{d2}) on "
                            f"{tuple_key(pair)}")
                    a_map = _entries_map(s, mod, mod, 0,
                                         ds.alpha.get((pair, dp), ()))
                    hmap = induced_cohomology_map(
                        a_map, Complex(mod, _pair_differential(s, pair, d1)),
                        Complex(mod, _pair_differential(s, pair, d2)),
                        self.h[(pair, d1)], self.h[(pair, d2)])
                    self.alpha_iso[(pair, d1, d2)] = hmap

    def hF(self, l, k):
        pair = (l, k)
        if pair not in self.rep_datum:
            return None
        return self.h[(pair, self.rep_datum[pair])]

    def alpha_certificates_pass(self):
        return all(h.is_isomorphism() for h in self.alpha_iso.values())

    def composition_table(self, triple, col: CompatibleCollection):
        """H-level composition induced by the chosen datum on a triple."""
        s = self.setup
        ring = s.ring
        l0, l1, l2 = triple
        h01 = self.h[((l0, l1), col.datum((l0, l1)))]
        h12 = self.h[((l1, l2), col.datum((l1, l2)))]
        h02 = self.h[((l0, l2), col.datum((l0, l2)))]
        table = {}
        entries = {}
        for (inputs, out, scalar) in s.mu_entries(triple, col.datum(triple)):
            val = ring.parse_scalar(scalar) if isinstance(scalar, str) else scalar
            entries.setdefault(tuple(inputs), {})
            _merge(entries[tuple(inputs)], out, val, ring)
        m01, m12, m02 = (s.cf_module(l0, l1), s.cf_module(l1, l2),
                         s.cf_module(l0, l2))
        for d1 in list(h01.by_degree):
            p1 = h01.degree(d1)
            for d2 in list(h12.by_degree):
                p2 = h12.degree(d2)
                pt = h02.degree(d1 + d2)
                for i in range(p1.class_count):
                    for j in range(p2.class_count):
                        acc = {}
                        xv = dict(zip(m01.labels(d1), p1.reps[i]))
                        yv = dict(zip(m12.labels(d2), p2.reps[j]))
                        for (lx, vx) in xv.items():
                            if vx == 0:
                                continue
                            for (ly, vy) in yv.items():
                                if vy == 0:
                                    continue
                                for o, vo in entries.get((lx, ly), {}).items():
                                    _merge(acc, o,
                                           ring.mul(ring.mul(vx, vy), vo), ring)
                        vec = [ring.zero()] * pt.module_rank
                        for lab, v in acc.items():
                            vec[m02.index_of(lab)] = v
                        table[(d1, i, d2, j)] = (pt.normalize_coords(pt.project(vec))
                                                 if pt.class_count else ())
        return table


def df_precategory(s: WeakFloerSetup) -> DFPreCategory:
    return DFPreCategory(s)


def check_envelope_independence(s: WeakFloerSetup, col1: CompatibleCollection,
                                col2: CompatibleCollection):
    """Lemma-can certificates: the alpha-induced comparison between the two
    envelopes' cohomologies is an isomorphism on every hom, functorial on
    composable pairs, with the beta homotopy identities verified exactly."""
    if s.profile != "full" or s.data_system is None:
        raise AlphaMissing("independence certificates need the full profile")
    ds = s.data_system
    ring = s.ring
    report = {"pairs": [], "functoriality": [], "beta": [], "passed": True}
    hmaps = {}
    for pair in s.tuples(1):
        d1, d2 = col1.datum(pair), col2.datum(pair)
        dp = None
        for (dp_id, pr) in ds.Dprime.get(pair, ()):
            if pr == (d1, d2):
                dp = dp_id
                break
        if dp is None:
            raise AlphaMissing(f"no alpha over ({d1},{d2}) on {tuple_key(pair)}")
        mod = s.cf_module(*pair)
        a_map = _entries_map(s, mod, mod, 0, ds.alpha.get((pair, dp), ()))
        cx1 = Complex(mod, _pair_differential(s, pair, d1))
        cx2 = Complex(mod, _pair_differential(s, pair, d2))
        hmap = induced_cohomology_map(a_map, cx1, cx2)
        iso = hmap.is_isomorphism()
        hmaps[pair] = (hmap, a_map)
        report["pairs"].append({"pair": list(pair), "alpha": dp, "iso": iso})
        if not iso:
            report["passed"] = False
    # functoriality on composable triples at H level
    for triple in s.tuples(2):
        l0, l1, l2 = triple
        ok = _functoriality_ok(s, col1, col2, triple, hmaps)
        report["functoriality"].append({"triple": list(triple), "passed": ok})
        if not ok:
            report["passed"] = False
    # beta certificates: over each pair and each Dsecond element whose
    # boundary alpha data matches the two collections' comparison
    for pair in s.tuples(1):
        mod = s.cf_module(*pair)
        for (ds_id, (ac, ab, bc)) in ds.Dsecond.get(pair, ()):
            b_map = _entries_map(s, mod, mod, -1, ds.beta.get((pair, ds_id), ()))
            defect = _beta_defect(s, pair, ac, ab, bc, b_map)
            report["beta"].append({"pair": list(pair), "element": ds_id,
                                   "passed": defect is None})
            if defect is not None:
                report["passed"] = False
    return report


def _functoriality_ok(s, col1, col2, triple, hmaps):
    """H-level conjugation: alpha(mu2_delta1(x, y)) = mu2_delta2(alpha x, alpha y)
    as maps on cohomology classes."""
    ring = s.ring
    l0, l1, l2 = triple
    m01, m12, m02 = (s.cf_module(l0, l1), s.cf_module(l1, l2), s.cf_module(l0, l2))
    mu1 = {}
    for (inputs, out, scalar) in s.mu_entries(triple, col1.datum(triple)):
        val = ring.parse_scalar(scalar) if isinstance(scalar, str) else scalar
        mu1.setdefault(tuple(inputs), {})
        _merge(mu1[tuple(inputs)], out, val, ring)
    mu2t = {}
    for (inputs, out, scalar) in s.mu_entries(triple, col2.datum(triple)):
        val = ring.parse_scalar(scalar) if isinstance(scalar, str) else scalar
        mu2t.setdefault(tuple(inputs), {})
        _merge(mu2t[tuple(inputs)], out, val, ring)
    h01 = cohomology(Complex(m01, _pair_differential(s, (l0, l1),
                                                     col1.datum((l0, l1)))))
    h12 = cohomology(Complex(m12, _pair_differential(s, (l1, l2),
                                                     col1.datum((l1, l2)))))
    h02_2 = cohomology(Complex(m02, _pair_differential(s, (l0, l2),
                                                       col2.datum((l0, l2)))))
    a01 = hmaps[(l0, l1)][1]
    a12 = hmaps[(l1, l2)][1]
    a02 = hmaps[(l0, l2)][1]

    def apply_bilinear(table, xd, yd):
        acc = {}
        for lx, vx in xd.items():
            for ly, vy in yd.items():
                for o, vo in table.get((lx, ly), {}).items():
                    _merge(acc, o, ring.mul(ring.mul(vx, vy), vo), ring)
        return acc

    for d1 in list(h01.by_degree):
        p1 = h01.degree(d1)
        for d2 in list(h12.by_degree):
            p2 = h12.degree(d2)
            for i in range(p1.class_count):
                for j in range(p2.class_count):
                    xd = {lab: v for lab, v in zip(m01.labels(d1), p1.reps[i])
                          if v != 0}
                    yd = {lab: v for lab, v in zip(m12.labels(d2), p2.reps[j])
                          if v != 0}
                    lhs_ch = {}
                    for o, vo in apply_bilinear(mu1, xd, yd).items():
                        for o2, va in a02.apply_label(o).items():
                            _merge(lhs_ch, o2, ring.mul(vo, va), ring)
                    ax = {}
                    for lab, v in xd.items():
                        for o, va in a01.apply_label(lab).items():
                            _merge(ax, o, ring.mul(v, va), ring)
                    ay = {}
                    for lab, v in yd.items():
                        for o, va in a12.apply_label(lab).items():
                            _merge(ay, o, ring.mul(v, va), ring)
                    rhs_ch = apply_bilinear(mu2t, ax, ay)
                    pt = h02_2.degree(d1 + d2)
                    if pt.class_count == 0:
                        continue
                    vec1 = [ring.zero()] * pt.module_rank
                    for lab, v in lhs_ch.items():
                        vec1[m02.index_of(lab)] = v
                    vec2 = [ring.zero()] * pt.module_rank
                    for lab, v in rhs_ch.items():
                        vec2[m02.index_of(lab)] = v
                    if pt.project(vec1) != pt.project(vec2):
                        return False
    return True

"""Catalog of every verifiable identity, keyed by stable id.

Each entry carries default bounds and a runner that returns report rows
``{id, order, status, ...}``.  ``status`` is ``pass``, ``fail`` or
``flagged``; ``flagged`` means only a recorded non-printed variant matched.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

from . import askey_wilson, combinatorics, conjectures, lommel, moments

ORDER_KEYS = ("order", "max_n", "max_m")

Row = dict
Runner = Callable[[dict], List[Row]]


@dataclass(frozen=True)
class Identity:
    id: str
    group: str
    defaults: Dict[str, int]
    run: Runner
    summary: str = ""
    keys: tuple = field(default=())


REGISTRY: Dict[str, Identity] = {}


def _register(id_: str, group: str, defaults: Dict[str, int], summary: str):
    def deco(fn: Runner) -> Runner:
        REGISTRY[id_] = Identity(id_, group, dict(defaults), fn, summary, tuple(defaults))
        return fn
    return deco


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _relabel(id_: str, row: Row, **extra) -> Row:
    out = {"id": id_}
    out.update({k: v for k, v in row.items() if k != "id"})
    out.update(extra)
    return out


# polynomial families ------------------------------------------------------------------

def _explicit_rows(id_: str, which: str, max_n: int, variants=()) -> List[Row]:
    rows = []
    for n in range(max_n + 1):
        target = lommel.explicit_target(which, n)
        got = lommel.explicit_formula(which, n)
        row = {"id": id_, "order": n}
        if got == target:
            row["status"] = "pass"
        else:
            row["status"] = "fail"
            row["witness"] = (got - target).canonical()
            for v in variants:
                if lommel.explicit_formula(which, n, v) == target:
                    row["status"] = "flagged"
                    row["variant"] = v
                    break
        rows.append(row)
    return rows


@_register("thm:explicit1", "lommel", {"max_n": 6}, "double sum for p_2n")
def _explicit1(b):
    return _explicit_rows("thm:explicit1", "evenodd_even", b["max_n"])


@_register("thm:explicit2", "lommel", {"max_n": 6}, "double sum for p_2n+1")
def _explicit2(b):
    return _explicit_rows("thm:explicit2", "evenodd_odd", b["max_n"], ("cq", "c_inverse"))


@_register("thm:classexp", "lommel", {"max_n": 10}, "single sum for h_n")
def _classexp(b):
    return _explicit_rows("thm:classexp", "classical", b["max_n"])


@_register("thm:RIexplicit", "lommel", {"max_n": 8}, "single sum for r_n")
def _riexplicit(b):
    return _explicit_rows("thm:RIexplicit", "R1", b["max_n"])


@_register("prop:evenodd-explicit", "lommel", {"max_n": 11}, "single-index sums for p_n")
def _evenodd_pair(b):
    return _explicit_rows("prop:evenodd-explicit", "evenodd_pair", b["max_n"])


@_register("prop:Igf", "lommel", {"max_n": 8}, "generating function of (1/c;1/q)_n r_n")
def _igf(b):
    co = lommel.generating_function_coeffs(b["max_n"])
    rows = []
    for n in range(b["max_n"] + 1):
        target = lommel.generating_function_target(n)
        ok = target == co[n]
        row = {"id": "prop:Igf", "order": n, "status": _status(ok)}
        if not ok:
            row["witness"] = (target - co[n]).canonical()
        rows.append(row)
    return rows


@_register("prop:weirdconncoef", "lommel", {"max_n": 4}, "r_n(x^2) in the p_2k basis")
def _conn_r(b):
    return [_relabel("prop:weirdconncoef", lommel.connection_expand("r_in_p", n))
            for n in range(b["max_n"] + 1)]


@_register("prop:invweirdconncoef", "lommel", {"max_n": 4}, "p_2n in the r_k(x^2) basis")
def _conn_p(b):
    return [_relabel("prop:invweirdconncoef", lommel.connection_expand("p_in_r", n))
            for n in range(b["max_n"] + 1)]


@_register("prop:connection-roundtrip", "lommel", {"max_n": 4}, "the two connection matrices are inverse")
def _conn_rt(b):
    return [{"id": "prop:connection-roundtrip", "order": b["max_n"],
             "status": _status(lommel.connection_round_trip(b["max_n"]))}]


@_register("prop:momentsmatch", "moments", {"max_n": 4}, "L_p(r_n(x^2)) and L_r(r_n)")
def _momentsmatch(b):
    rows = []
    for n in range(b["max_n"] + 1):
        lp = moments.moments_match_check(n)
        lr = moments.lr_of_r_check(n)
        rows.append({"id": "prop:momentsmatch", "order": n, "status": _status(lp and lr),
                     "L_p": _status(lp), "L_r": _status(lr)})
    return rows


@_register("prop:firstprop", "lommel", {"max_n": 4}, "p_2n = t_n(x^2)")
def _firstprop(b):
    even, _ = lommel.evenodd_half_check(b["max_n"])
    return [{"id": "prop:firstprop", "order": b["max_n"], "status": _status(even)}]


@_register("prop:secondprop", "lommel", {"max_n": 4}, "p_2n+1 = x s_n(x^2)")
def _secondprop(b):
    _, odd = lommel.evenodd_half_check(b["max_n"])
    return [{"id": "prop:secondprop", "order": b["max_n"], "status": _status(odd)}]


def _bessel_rows(id_: str, which: str, b) -> List[Row]:
    return [{"id": id_, "order": b["order"], "n": n,
             "status": _status(lommel.bessel_recurrence_check(which, n, b["order"]))}
            for n in range(1, b["max_n"] + 1)]


@_register("eq:Bessel-Lommel", "lommel", {"max_n": 4, "order": 6}, "J_(nu+n) via R_(n,nu)")
def _bes_lom(b):
    return _bessel_rows("eq:Bessel-Lommel", "classical", b)


@_register("eq:qBesLom1", "lommel", {"max_n": 4, "order": 6}, "first q-Bessel recurrence")
def _qbes_lom(b):
    return _bessel_rows("eq:qBesLom1", "first_q", b)


@_register("eq:KS-rec2", "lommel", {"max_n": 4, "order": 6}, "third q-Bessel recurrence")
def _ks_rec(b):
    return _bessel_rows("eq:KS-rec2", "third_q", b)


def _relation_rows(id_: str, fn, max_n: int) -> List[Row]:
    return [{"id": id_, "order": n, "status": _status(fn(n))} for n in range(max_n + 1)]


@_register("defn:Lommel", "lommel", {"max_n": 6}, "h_n(x;nu) = R_(n,nu)(2/x)/(nu)_n")
def _lommel_rescale(b):
    return _relation_rows("defn:Lommel", lommel.monic_lommel_vs_R, b["max_n"])


@_register("prop:qBesLom1-rescale", "lommel", {"max_n": 6}, "h_n = R^(1)_n(2/x)/(c;q)_n")
def _h_rescale(b):
    return _relation_rows("prop:qBesLom1-rescale", lommel.h_vs_first_qbessel, b["max_n"])


@_register("eq:r=R", "lommel", {"max_n": 5}, "r3_n from the Laurent polynomials R^(3)")
def _r_eq_R(b):
    return _relation_rows("eq:r=R", lommel.r3_vs_laurent, b["max_n"])


@_register("eq:r3", "lommel", {"max_n": 6}, "r_n(x) = r3_n(c x)/c^n")
def _r_r3(b):
    return _relation_rows("eq:r3", lommel.r_vs_r3, b["max_n"])


@_register("eq:R=J", "lommel", {"max_m": 4, "order": 8}, "ratio of R^(3) stabilizes to the J^(3) ratio")
def _r_eq_j(b):
    rows = []
    for m in range(b["max_m"] + 1):
        diff = lommel.r3_ratio_agreement(m, b["order"])
        # cutoff m must agree through z^(2m+2)
        ok = diff is None or diff > min(2 * m + 2, b["order"])
        rows.append({"id": "eq:R=J", "order": b["order"], "m": m, "status": _status(ok),
                     "first_difference": diff})
    return rows


@_register("eq:KSlim", "lommel", {"max_m": 6, "order": 12}, "z^m R^(3)_m converges q-adically")
def _ks_lim(b):
    rows = []
    for m in range(1, b["max_m"] + 1):
        vals = [lommel.ks_limit_defect(m, k, b["order"]) for k in range(3)]
        # the z^(2k) defect has q-valuation at least m - k
        ok = all(v is None or v >= m - k for k, v in enumerate(vals))
        rows.append({"id": "eq:KSlim", "order": b["order"], "m": m, "status": _status(ok),
                     "defect_valuations": vals})
    return rows


@_register("thm:IM", "askey_wilson", {"max_n": 2}, "psi solutions satisfy the AW recurrence")
def _im(b):
    return [_relabel("thm:IM", askey_wilson.psi_residual_check(eps, nmax=b["max_n"]), eps=eps)
            for eps in (1, 2)]


def _limit_rows(id_: str, cases, max_n: int) -> List[Row]:
    rows = []
    for which in cases:
        for n in range(max_n + 1):
            rows.append(_relabel(id_, askey_wilson.aw_limit_check(which, n), case=which))
    return rows


@_register("thm:limit1", "askey_wilson", {"max_n": 3}, "p_n as alpha -> infinity limits")
def _limit1(b):
    return _limit_rows("thm:limit1", ("evenodd_even", "evenodd_odd"), b["max_n"])


@_register("thm:limit2", "askey_wilson", {"max_n": 3}, "h_n as alpha -> infinity limits")
def _limit2(b):
    return _limit_rows("thm:limit2", ("classical_even", "classical_odd"), b["max_n"])


# continued fractions -------------------------------------------------------------------

_CF_DEFAULTS = {
    "thm:firstmom": 8, "thm:secondmom": 8, "thm:thirdmom": 8, "cor:bigcor": 8,
    "lem:heine": 6, "lem:norlund": 6, "prop:norlund-restated": 6,
    "thm:genequalmom": 6, "cor:2n-moment": 6,
}


def _cf_runner(id_: str) -> Runner:
    return lambda b: [moments.cf_identity_verify(id_, b["order"])]


for _id, _order in _CF_DEFAULTS.items():
    REGISTRY[_id] = Identity(_id, "moments", {"order": _order}, _cf_runner(_id),
                             "series ratio against continued fraction", ("order",))


@_register("thm:equalmom", "moments", {"max_m": 8}, "L_r(x^m) = L_p(x^2m)")
def _equalmom(b):
    return moments.equalmom_rows(b["max_m"])


@_register("eq:P-over-P", "moments", {"max_m": 4}, "P*_m/P_(m+1) as a finite K-fraction")
def _p_over_p(b):
    return moments.p_over_p_rows(b["max_m"])


@_register("lem:K=K", "moments", {"order": 4}, "level rescaling re-derives the restated q-Norlund fraction")
def _k_eq_k(b):
    return [{"id": "lem:K=K", "order": b["order"],
             "status": _status(moments.norlund_restated_by_transform(b["order"]))}]


# combinatorial models ------------------------------------------------------------------

def _comb_rows(id_: str, bounds_list: Iterable[dict]) -> List[Row]:
    return [combinatorics.comb_identity_verify(id_, bd) for bd in bounds_list]


@_register("lem:flajolet", "combinatorics", {"order": 8, "m": 3}, "2-Motzkin paths vs finite fraction")
def _flajolet(b):
    return _comb_rows("lem:flajolet", [b])


@_register("prop:PP", "combinatorics", {"order": 8, "m": 2}, "weighted polyominoes vs finite fraction")
def _pp(b):
    return _comb_rows("prop:PP", [b])


@_register("cor:XYq", "combinatorics", {"order": 10, "m": 3}, "PP^(<=m+1) generating function")
def _xyq(b):
    return _comb_rows("cor:XYq", [{"order": b["order"], "m": m} for m in range(b["m"] + 1)])


@_register("thm:ratio-of-R1", "combinatorics", {"order": 8, "m": 2}, "PP^(<=m+1) as a ratio of r3 polynomials")
def _ratio_r1(b):
    return _comb_rows("thm:ratio-of-R1", [{"order": b["order"], "m": m} for m in range(b["m"] + 1)])


@_register("cor:double-sum", "combinatorics", {"m": 3}, "double-sum form of the ratio")
def _double_sum(b):
    return _comb_rows("cor:double-sum", [b])


@_register("thm:cigler-kratt", "combinatorics", {"order": 8, "k": 3}, "column-bounded polyominoes")
def _cigler(b):
    return _comb_rows("thm:cigler-kratt", [{"order": b["order"], "k": k} for k in range(1, b["k"] + 1)])


@_register("eq:BM1", "combinatorics", {"order": 10}, "all polyominoes, q-series form")
def _bm1(b):
    return _comb_rows("eq:BM1", [b])


@_register("eq:BM2", "combinatorics", {"order": 10}, "all polyominoes, Jacobi form")
def _bm2(b):
    return _comb_rows("eq:BM2", [b])


@_register("eq:classxy", "combinatorics", {"order": 6}, "classical data in x, y, q")
def _classxy(b):
    return _comb_rows("eq:classxy", [b])


@_register("eq:evenoddxy", "combinatorics", {"order": 6}, "even-odd data in x, y, q")
def _evenoddxy(b):
    return _comb_rows("eq:evenoddxy", [b])


@_register("thm:DF-BM", "combinatorics", {"order": 8}, "stabilization of the finite fractions")
def _df_bm(b):
    return _comb_rows("thm:DF-BM", [b])


@_register("thm:concurmom", "combinatorics", {"n": 2, "unit_n": 4}, "Schroder path tuples and Lambda products")
def _concurmom(b):
    return _comb_rows("thm:concurmom", [b])


@_register("def:phi", "combinatorics", {"order": 8, "m": 3}, "phi: 2-Motzkin paths to polyominoes")
def _phi(b):
    res = combinatorics.phi_bijection_check(b["order"], b["m"])
    ok = res["round_trip"] and res["image"] and res["weight"]
    return [{"id": "def:phi", "order": b["order"], "m": b["m"], "status": _status(ok),
             "round_trip": res["round_trip"], "image": res["image"], "weight": res["weight"],
             "counts": res["counts"]}]


# conjectures -------------------------------------------------------------------------------

@_register("thm:kishore", "conjectures", {"max_n": 10}, "predicted denominators of J_(nu+1)/J_nu")
def _kishore(b):
    return conjectures.kishore_rows(b["max_n"])


@_register("conj:finite-kishore", "conjectures", {"max_m": 4, "max_n": 8}, "finite Lommel ratios")
def _finite_kishore(b):
    return conjectures.finite_kishore_rows(b["max_m"], b["max_n"])


@_register("conj:gamma-norlund", "conjectures", {"max_n": 6}, "q-Norlund ratio coefficients")
def _gamma_n(b):
    return conjectures.gamma_rows("norlund", b["max_n"])


@_register("conj:gamma-heine", "conjectures", {"max_n": 6}, "Heine ratio coefficients")
def _gamma_h(b):
    return conjectures.gamma_rows("heine", b["max_n"])


# running ---------------------------------------------------------------------------------------

def identity_ids() -> List[str]:
    return sorted(REGISTRY)


def resolve_bounds(id_: str, overrides: Optional[dict] = None, cap: Optional[int] = None) -> dict:
    """Defaults of ``id_`` updated by ``overrides``; order-like bounds above ``cap`` are errors."""
    if id_ not in REGISTRY:
        raise KeyError("unknown-identity")
    ident = REGISTRY[id_]
    bounds = dict(ident.defaults)
    for k, v in (overrides or {}).items():
        if v is None:
            continue
        if k not in bounds:
            raise ValueError(f"{id_} takes no bound {k!r}; accepted: {', '.join(ident.keys) or 'none'}")
        if v < 0:
            raise ValueError(f"bound {k} must be nonnegative")
        bounds[k] = v
    if cap is not None:
        for k in ORDER_KEYS:
            if k in bounds and bounds[k] > cap:
                raise ValueError(f"bound {k}={bounds[k]} exceeds QLOMMEL_MAX_ORDER={cap}")
    return bounds


def verify(id_: str, overrides: Optional[dict] = None, cap: Optional[int] = None) -> List[Row]:
    """Run one identity; every row gets the bounds used under ``parameters``."""
    bounds = resolve_bounds(id_, overrides, cap)
    rows = REGISTRY[id_].run(dict(bounds))
    for r in rows:
        r.setdefault("parameters", dict(bounds))
    return rows


def suite(ids: Optional[Iterable[str]] = None, jobs: int = 1, cap: Optional[int] = None) -> List[Row]:
    """Every registered identity once, at default bounds, rows sorted by id.

    With a ``cap``, defaults above it are lowered to it.
    """
    chosen = sorted(ids) if ids is not None else identity_ids()

    def one(id_: str) -> List[Row]:
        over = {}
        if cap is not None:
            over = {k: min(v, cap) for k, v in REGISTRY[id_].defaults.items() if k in ORDER_KEYS}
        return verify(id_, over, cap)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(one, chosen))
    else:
        results = [one(i) for i in chosen]
    return [row for rows in results for row in rows]


def summarize(rows: Iterable[Row]) -> Dict[str, int]:
    out = {"pass": 0, "fail": 0, "flagged": 0}
    for r in rows:
        out[r["status"]] += 1
    return out

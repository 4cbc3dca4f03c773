"""Command line front end.

Exit codes: 0 success, 1 a property check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import applications as app
from .errors import CheckFailed, DomainError, InputError
from .jobfile import Job, encode, dumps, load_job
from .mixed import Lift, khovanskii_mv, mixed_volume, mv_zero_witness
from .polytope import PointSet, convex_hull
from .semi import (
    DaughterFamily,
    classify_faces,
    daughter_family,
    find_face,
    restricted_mv,
    suture_system,
    verify_main_lemma,
)


def _pointset(job: Job) -> PointSet:
    if not job.points:
        raise InputError("points: must be nonempty")
    if len(set(job.points)) != len(job.points):
        raise InputError("points: duplicate points are not allowed (indices would be ambiguous)")
    return PointSet(job.points, job.dim)


def _daughters(job: Job):
    if job.daughters is None:
        raise InputError("daughters: missing")
    if len(job.daughters) != job.dim:
        raise InputError(f"daughters: expected {job.dim} index lists, got {len(job.daughters)}")
    if any(not d for d in job.daughters):
        raise InputError("daughters: every index list must be nonempty")
    return job.daughters


def _cone(job: Job) -> app.ConeSpec:
    if job.cone is None:
        return app.ConeSpec.orthant(job.dim)
    return app.ConeSpec(job.dim, job.cone)


def _face_doc(F):
    return {"indices": list(F.indices), "dim": F.dim, "witness": list(F.witness)}


def _method(args) -> str:
    return "oracle" if args.oracle else "formula"


def cmd_volume(job: Job, args):
    H = convex_hull(_pointset(job))
    return {"result": H.volume if H.dim else 1, "dim": H.dim, "vertices": list(H.vertices)}, 0


def cmd_mixed_volume(job: Job, args):
    P = _pointset(job)
    sets = [[P.points[i] for i in D] for D in _daughters(job)]
    value = mixed_volume(sets)
    doc = {"result": value, "zero_witness": None}
    w = mv_zero_witness(sets)
    doc["zero_witness"] = list(w) if w is not None else None
    if (w is None) != (value > 0):
        raise CheckFailed("zero criterion disagrees with the computed mixed volume")
    if args.check:
        heights = job.param_rationals("heights")
        if heights is None:
            heights = [[Fraction(sum(x * x for x in p)) for p in s] for s in sets]
        if len(heights) != len(sets) or any(len(h) != len(s) for h, s in zip(heights, sets)):
            raise InputError("params.heights: one list of heights per set, one height per point")
        rep = khovanskii_mv([Lift(PointSet(tuple(s), job.dim), tuple(h)) for s, h in zip(sets, heights)])
        doc["khovanskii"] = rep.value
        doc["cells"] = len(rep.per_xi)
        if rep.value != value:
            raise CheckFailed(f"polarization gives {value}, subdivision formula gives {rep.value}")
    return doc, 0


def cmd_daughter_check(job: Job, args):
    P = _pointset(job)
    if job.daughters is None:
        raise InputError("daughters: missing")
    H = convex_hull(P)
    rows = []
    code = 0
    for D in job.daughters:
        if not D:
            raise InputError("daughters: every index list must be nonempty")
        chk = daughter_family(D, P, H)
        rows.append({
            "accepted": chk.accepted,
            "removed": [list(F.indices) for F in chk.removed],
            "violation": chk.violation,
        })
        if not chk.accepted:
            code = 1
    return {"result": code == 0, "daughters": rows}, code


def _family(job: Job) -> DaughterFamily:
    return DaughterFamily.build(_pointset(job), _daughters(job))


def cmd_semi_check(job: Job, args):
    rep = classify_faces(_family(job))
    doc = {
        "result": rep.semi,
        "sutures": [list(S.indices) for S in rep.sutures],
        "violation": _face_doc(rep.violation) if rep.violation else None,
    }
    return doc, 0 if rep.semi else 1


def cmd_sutures(job: Job, args):
    fam = _family(job)
    tab = suture_system(fam, check=args.check)
    doc = {
        "sutures": [list(S.indices) for S in tab.sutures],
        "dims": [S.dim for S in tab.sutures],
        "C": tab.C,
        "D": tab.Dmat,
        "v": tab.v,
        "vdag": tab.vdag,
        "result": tab.mixed_volume,
    }
    if args.oracle:
        direct = [1 if S.dim == 0 else restricted_mv(fam, S) for S in tab.sutures]
        doc["vdag"] = direct
        doc["result"] = direct[-1]
    if args.check:
        oracle = mixed_volume([fam.points_of(D) for D in fam.daughters])
        if oracle != tab.mixed_volume:
            raise CheckFailed(f"suture formula gives {tab.mixed_volume}, polarization gives {oracle}")
    return doc, 0


def cmd_voff(job: Job, args):
    P = _pointset(job)
    C = _cone(job)
    value = app.voff(P, C, _method(args), args.check)
    return {"result": value, "untouched_facets": list(app.untouched_facets(P, C))}, 0


def cmd_newton(job: Job, args):
    return {"result": app.newton_number(_pointset(job), check=args.check)}, 0


def cmd_bk_detect(job: Job, args):
    hit = app.detect_stretched_bk(_pointset(job))
    if hit is None:
        return {"result": None}, 0
    return {
        "result": {
            "k": hit.k,
            "coords": list(hit.coords),
            "blocks": [list(map(list, b)) for b in hit.blocks],
            "stretch": list(hit.stretch),
        }
    }, 0


def _supports(job: Job) -> app.CayleyInput:
    if job.supports is None:
        raise InputError("blocks: missing")
    return app.CayleyInput.of(job.supports, job.block_dim)


def cmd_mldeg(job: Job, args):
    u = job.param_ints("u")
    if u is None:
        raise InputError("params.u: missing")
    return {"result": app.ml_degree(_supports(job), u, _method(args), args.check)}, 0


def cmd_eddeg(job: Job, args):
    return {"result": app.ed_degree(_supports(job), _method(args), args.check)}, 0


def cmd_pdeg(job: Job, args):
    d = job.param_int("degree")
    return {"result": app.polar_degree(_pointset(job).points, d, _method(args), args.check)}, 0


def cmd_mult(job: Job, args):
    P = _pointset(job)
    face = job.param_ints("face")
    if face is not None:
        return {"result": app.orbit_multiplicity(P, face)}, 0
    rows = app.multiplicities(P)
    smooth = all(m == 1 for _, m in rows)
    if args.check and smooth != app.smooth_by_generated_lattice(P):
        raise CheckFailed("smoothness from multiplicities disagrees with the generated-lattice test")
    return {
        "result": smooth,
        "faces": [list(F.indices) for F, _ in rows],
        "multiplicities": [m for _, m in rows],
    }, 0


def cmd_verify_lemma(job: Job, args):
    fam = _family(job)
    face = job.param_ints("face")
    if face is None:
        targets = list(classify_faces(fam).sutures)
    else:
        targets = [find_face(fam, face)]
    reports = [verify_main_lemma(fam, S) for S in targets]
    ok = all(r.ok for r in reports)
    doc = {
        "result": ok,
        "sutures": [
            {
                "suture": list(r.suture.indices),
                "terms": [
                    {"xi": list(t.xi), "lhs": t.lhs, "rhs": t.rhs, "meeting": t.meeting, "needed": t.needed}
                    for t in r.terms
                ],
            }
            for r in reports
        ],
    }
    return doc, 0 if ok else 1


COMMANDS = {
    "volume": (cmd_volume, "lattice volume of the hull of the points"),
    "mixed-volume": (cmd_mixed_volume, "mixed volume of the index sets given as daughters"),
    "daughter-check": (cmd_daughter_check, "test each index set for being a daughter polytope"),
    "semi-check": (cmd_semi_check, "test a daughter family for being semi-interlaced"),
    "sutures": (cmd_sutures, "suture table: coefficient matrix, inverse, volumes"),
    "voff": (cmd_voff, "mixed volume of the off-coordinate polytopes"),
    "newton": (cmd_newton, "Newton number of a convenient set"),
    "bk-detect": (cmd_bk_detect, "search for a stretched B_k decomposition"),
    "mldeg": (cmd_mldeg, "maximum likelihood degree"),
    "eddeg": (cmd_eddeg, "Euclidean distance degree"),
    "pdeg": (cmd_pdeg, "polar degree of a form"),
    "mult": (cmd_mult, "toric orbit multiplicities"),
    "verify-lemma": (cmd_verify_lemma, "check the local volume identity at sutures"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("job", help="job file (JSON, integers as decimal strings)")
    common.add_argument("--oracle", action="store_true", help="force the polarization route")
    common.add_argument("--check", action="store_true", help="run both routes and fail on mismatch")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="semimv", description="Exact mixed volumes of semi-interlaced lattice polytopes.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_)
    return p


def _text(doc) -> str:
    lines = []
    for k, v in encode(doc).items():
        if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
            for row in v:
                lines.append("\t".join([k] + [json.dumps(x) if isinstance(x, (list, dict)) else str(x) for x in row]))
        elif isinstance(v, list):
            lines.append("\t".join([k] + [json.dumps(x) if isinstance(x, (list, dict)) else str(x) for x in v]))
        elif isinstance(v, dict):
            lines.append(f"{k}\t{json.dumps(v, sort_keys=True)}")
        else:
            lines.append(f"{k}\t{'null' if v is None else str(v).lower() if isinstance(v, bool) else v}")
    return "\n".join(lines) + "\n"


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    fn, _ = COMMANDS[args.command]
    try:
        job = load_job(args.job)
        doc, code = fn(job, args)
    except InputError as e:
        err.write(f"error: {e}\n")
        return 2
    except DomainError as e:
        doc = {"result": None, "error": str(e)}
        if e.face is not None:
            doc["violation"] = _face_doc(e.face)
        code = 1
    except CheckFailed as e:
        doc = {"result": None, "error": f"check failed: {e}"}
        code = 1
    full = {"command": args.command, **doc}
    out.write(dumps(full) if args.json else _text(full))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line: ``equivarium build ...`` and ``equivarium verify ...``.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 size guard.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .categories import CategoryError, NotThinError
from .corpus import DescriptorError, load_group, presheaf_from_descriptor
from .groups import GroupError
from .homology import HomologyError
from .limits import SizeGuardError
from .presheaves import PresheafError
from .serialize import (
    category_to_json,
    dumps,
    gcategory_to_json,
    gpreorder_to_json,
    marked_to_json,
    orbit_to_json,
    sset_to_json,
)

BUILDS = ("orbit-cat", "marked-orbit-cat", "c-cat", "c-pos", "milnor", "quotient", "nerve", "hocolim")
INVALID = (GroupError, CategoryError, PresheafError, DescriptorError, HomologyError, ValueError, OSError)


def _c_preorder(X):
    from .elmendorf import c_cat
    from .equivariant import gcategory_to_gpreorder

    return gcategory_to_gpreorder(c_cat(X))


def build(args) -> dict:
    from .elmendorf import c_cat
    from .homology import homology
    from .orbit import marked_orbit_category, orbit_category
    from .posets import c_pos, milnor, posetal_quotient
    from .simplicial import hocolim_diag, nerve

    G = load_group(args.group)
    what = args.what
    if what == "orbit-cat":
        O = orbit_category(G)
        data = category_to_json(O.cat)
        data.update(orbit_to_json(O))
        return data
    if what == "marked-orbit-cat":
        return marked_to_json(marked_orbit_category(G))
    X = presheaf_from_descriptor(G, args.presheaf)
    if what == "c-cat":
        data = gcategory_to_json(c_cat(X))
        data["presheaf"] = args.presheaf
        return data
    if what == "c-pos":
        return gpreorder_to_json(c_pos(X, args.depth))
    if what == "milnor":
        return gpreorder_to_json(milnor(_c_preorder(X), args.depth))
    if what == "quotient":
        q = posetal_quotient(_c_preorder(X))
        return {
            "source": gpreorder_to_json(q.source),
            "quotient": gpreorder_to_json(q.gquotient()),
            "proj": list(q.proj),
            "section": list(q.section),
        }
    if what == "nerve":
        S = nerve(c_cat(X), args.dim)
        data = sset_to_json(S)
        data["homology"] = homology(S).to_json() if args.dim >= 1 else []
        return data
    if what == "hocolim":
        S = hocolim_diag(X, args.dim)
        data = sset_to_json(S)
        data["homology"] = homology(S).to_json() if args.dim >= 1 else []
        return data
    raise ValueError(f"unknown construction {what!r}")


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equivarium", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group_default):
        sp.add_argument("--group", default=group_default,
                        help="builtin key (C2, C4, D4, S3, ...) or path to group JSON")
        sp.add_argument("--presheaf", default=None,
                        help="family:e | family:all | family:<ids> | const:point | const:chain2 | const:bz2")
        sp.add_argument("--depth", type=int, default=2, help="Milnor depth n")
        sp.add_argument("--dim", type=int, default=3, help="nerve truncation dimension")
        sp.add_argument("--out", default=None, help="write JSON here instead of stdout")
        sp.add_argument("--format", choices=("json",), default="json")

    b = sub.add_parser("build", help="construct an object and print it as JSON")
    b.add_argument("what", choices=BUILDS)
    common(b, "C2")
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="cat-theorem | pos-theorem | thomason | quotient-counterexample | all "
                                 "(aliases: elmendorf-cat, elmendorf-pos)")
    common(v, None)
    v.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    return p


def _emit(data, out):
    text = dumps(data) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, exc: Exception, code: int, out) -> int:
    body = {"error": kind, "message": str(exc)}
    if isinstance(exc, SizeGuardError):
        body.update(what=exc.what, size=exc.size, limit=exc.limit)
    _emit(body, out)
    return code


def main(argv=None) -> int:
    from .verify import ALIASES, SUITES, run_suite

    args = make_parser().parse_args(argv)
    try:
        if args.depth < 0 or args.dim < 0:
            raise ValueError("depth and dim must be nonnegative")
        if args.command == "build":
            if args.presheaf is None:
                args.presheaf = "family:e"
            _emit(build(args), args.out)
            return 0
        suite = ALIASES.get(args.suite, args.suite)
        if suite not in SUITES:
            raise ValueError(f"unknown suite {args.suite!r}")
        groups = args.group.split(",") if args.group else None
        if suite == "thomason" and args.dim < 1:
            raise ValueError("thomason needs --dim >= 1")
        if suite == "pos-theorem" and args.depth < 1:
            raise ValueError("pos-theorem needs --depth >= 1")
        rep = run_suite(suite, groups, args.presheaf, depth=args.depth, dim=args.dim, timing=args.timing)
        _emit(rep.to_json(), args.out)
        return 0 if rep.ok else 1
    except SizeGuardError as e:
        return _error("size guard", e, 3, args.out)
    except NotThinError as e:
        return _error("invalid input", e, 2, args.out)
    except INVALID as e:
        return _error("invalid input", e, 2, args.out)


if __name__ == "__main__":
    sys.exit(main())

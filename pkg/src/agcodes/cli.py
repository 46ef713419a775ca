"""Command line interface: verify-paper, analyze, search.

Exit codes: 0 success, 1 verification-assertion failure, 2 usage or parse
error.  All example data is embedded; the tool runs offline.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import codes, forms, linalg, operators
from .algebra import Ambient, format_element, parse_element
from .errors import AgcError, NotIdempotent, TooLargeToEnumerate
from .fields import FieldTower, parse_field_spec
from .groups import cyclic, direct_product, parse_group_spec

HEX = "0123456789abcdef"


def _pack_rows(code):
    if code.ambient.p <= 16:
        return ["".join(HEX[int(v)] for v in row) for row in code.rows.tolist()]
    return [list(map(int, row)) for row in code.rows.tolist()]


def _ambient_info(amb):
    return {
        "field": amb.tower.spec_string(),
        "group": amb.group.name,
        "order": amb.group.n,
        "dim_F_of_KG": amb.mn,
    }


def _parameters_entry(code, cap):
    try:
        params = codes.parameters(code, cap)
        return {"n": params.n, "q": params.q, "r": params.r, "d": params.d,
                "display": str(params)}
    except TooLargeToEnumerate as exc:
        return {"n": code.ambient.n, "q": code.ambient.tower.q, "r": code.dim_f,
                "d": None, "display": "distance enumeration capped",
                "size": str(exc.size)}


def _describe_code(code, form_list, cap):
    entry = {
        "dim_F": code.dim_f,
        "is_submodule": code.is_submodule,
        "parameters": _parameters_entry(code, cap),
        "basis": _pack_rows(code),
        "forms": {},
    }
    for form in form_list:
        if form.is_trace:
            dual = forms.orthogonal(form, code)
            entry["forms"][form.tag] = {
                "dual_dim_F": dual.dim_f,
                "lcd": codes.is_lcd(form, code),
                "self_dual": codes.is_self_dual(form, code),
            }
        elif code.is_k_linear():
            # K-valued forms: the dual coincides with the trace-form dual
            tform = form.trace_version()
            dual = forms.euclidean_orthogonal_of_ideal(form, code)
            entry["forms"][form.tag] = {
                "dual_dim_F": dual.dim_f,
                "lcd": codes.is_lcd(tform, code),
                "self_dual": codes.is_self_dual(tform, code),
                "note": "via the trace-form coincidence for left ideals",
            }
        else:
            entry["forms"][form.tag] = {
                "note": "K-valued dual defined for K-linear codes only",
            }
    return entry


# ---------------------------------------------------------------------------
# verify-paper


def _suite_f8_c3(inject_fault):
    modulus = (1, 0, 0, 1) if inject_fault else None  # 1 + x^3 is reducible
    amb = Ambient(FieldTower(2, 3, modulus), cyclic(3))
    e = parse_element(amb, "1 + g + g^2")
    restricted = codes.restricted_code(e)

    def dual_code():
        return forms.orthogonal(forms.TE, restricted)

    return [
        ("idempotent", lambda: e.is_idempotent),
        ("restricted-code-is-zero-and-e",
         lambda: sorted(map(str, restricted.codewords())) == sorted(["0", str(e)])),
        ("parameters-(3,2^1,3)",
         lambda: str(codes.parameters(restricted)) == "(3, 2^1, 3)"),
        ("te-self-pairing-is-1",
         lambda: forms.pair(forms.TE, e, e) == amb.tower.one),
        ("te-lcd", lambda: codes.is_lcd(forms.TE, restricted)),
        ("gram-rank-criterion-agrees",
         lambda: codes.lcd_criterion_rhoe(forms.TE, e)),
        ("dual-parameters-(3,2^8,1)",
         lambda: str(codes.parameters(dual_code())) == "(3, 2^8, 1)"),
        ("dual-dimension-exceeds-restricted-bound",
         lambda: dual_code().dim_f == 8 and 8 > amb.n),
    ]


def _suite_f9_c2(inject_fault):
    amb = Ambient(FieldTower(3, 2), cyclic(2))
    e = parse_element(amb, "2 + 2*g")
    restricted = codes.restricted_code(e)
    ones = np.ones((2, 2), dtype=np.int64)
    return [
        ("idempotent", lambda: e.is_idempotent),
        ("restricted-code-is-F(1+g)",
         lambda: restricted == codes.from_elements(amb, [parse_element(amb, "1 + g")])),
        ("gram-all-ones-te",
         lambda: np.array_equal(codes.gram_on_fg(forms.TE, e), ones)),
        ("gram-all-ones-th",
         lambda: np.array_equal(codes.gram_on_fg(forms.TH, e), ones)),
        ("gram-rank-1-equals-dim",
         lambda: restricted.dim_f == 1),
        ("te-lcd-criterion", lambda: codes.lcd_criterion_rhoe(forms.TE, e)),
        ("th-lcd-criterion", lambda: codes.lcd_criterion_rhoe(forms.TH, e)),
        ("te-lcd-direct", lambda: codes.is_lcd(forms.TE, restricted)),
        ("th-lcd-direct", lambda: codes.is_lcd(forms.TH, restricted)),
    ]


def _suite_f4_c6(inject_fault):
    amb = Ambient(FieldTower(2, 2), cyclic(6))
    e = parse_element(amb, "(a^2)*g2 + a*g4")
    restricted = codes.restricted_code(e)
    return [
        ("idempotent", lambda: e.is_idempotent),
        ("dim-6-size-64",
         lambda: restricted.dim_f == 6 and restricted.size == 64),
        ("parameters-(6,2^6,2)",
         lambda: str(codes.parameters(restricted)) == "(6, 2^6, 2)"),
        ("gram-zero-te",
         lambda: not codes.gram_on_fg(forms.TE, e).any()),
        ("selfdual-criterion", lambda: codes.selfdual_criterion_rhoe(forms.TE, e)),
        ("selfdual-direct", lambda: codes.is_self_dual(forms.TE, restricted)),
        ("not-lcd", lambda: not codes.is_lcd(forms.TE, restricted)),
    ]


def _suite_f9_klein(inject_fault):
    tower = FieldTower(3, 2)
    amb = Ambient(tower, direct_product(cyclic(2), cyclic(2)))
    subspace = operators.SubfieldSubspace(tower, [1])
    proj = operators.coefficientwise_projector(amb, subspace, forms.TH)
    image = operators.image(proj)
    two = tower.embed(2)
    return [
        ("pairing-1-1-th-is-2",
         lambda: forms.pair(forms.TH, amb.one(), amb.one()) == two),
        ("pairing-1-1-te-is-2",
         lambda: forms.pair(forms.TE, amb.one(), amb.one()) == two),
        ("fg-linear", proj.is_fg_linear),
        ("projector", proj.is_projector),
        ("self-adjoint-th", lambda: operators.is_self_adjoint(forms.TH, proj)),
        ("self-adjoint-te", lambda: operators.is_self_adjoint(forms.TE, proj)),
        ("image-th-lcd", lambda: codes.is_lcd(forms.TH, image)),
        ("image-te-lcd", lambda: codes.is_lcd(forms.TE, image)),
        ("not-right-multiplication",
         lambda: operators.as_right_multiplication(proj) is None),
    ]


SUITES = [
    ("F8-C3-lcd", _suite_f8_c3),
    ("F9-C2-gram-rank", _suite_f9_c2),
    ("F4-C6-self-dual", _suite_f4_c6),
    ("F9-Klein-coefficientwise", _suite_f9_klein),
]


def cmd_verify_paper(args):
    results = []
    for suite_name, builder in SUITES:
        try:
            assertions = builder(args.inject_fault)
        except Exception as exc:  # construction failures count as the first assertion
            results.append({"suite": suite_name, "assertion": "setup",
                            "ok": False, "detail": f"{type(exc).__name__}: {exc}"})
            continue
        for name, thunk in assertions:
            try:
                ok = bool(thunk())
                detail = ""
            except Exception as exc:
                ok = False
                detail = f"{type(exc).__name__}: {exc}"
            results.append({"suite": suite_name, "assertion": name,
                            "ok": ok, "detail": detail})
    all_ok = all(r["ok"] for r in results)
    if args.json:
        print(json.dumps({"ok": all_ok, "results": results}, indent=1))
    else:
        for r in results:
            status = "PASS" if r["ok"] else "FAIL"
            line = f"{status} {r['suite']}:{r['assertion']}"
            if r["detail"]:
                line += f"  [{r['detail']}]"
            print(line)
        print("verify-paper:", "all assertions passed" if all_ok else "FAILURES detected")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# analyze


def _build_ambient(args):
    tower = parse_field_spec(args.field)
    group = parse_group_spec(args.group)
    return Ambient(tower, group)


def _form_list(args, amb):
    if args.form:
        names = [tok for part in args.form for tok in part.split(",") if tok]
        out = [forms.parse_form(name) for name in names]
        for form in out:
            if form.is_hermitian and amb.m % 2:
                raise AgcError(
                    f"form {form.tag} needs an even extension degree, got m={amb.m}"
                )
    else:
        out = list(forms.trace_forms_for(amb))
    return out


def cmd_analyze(args):
    amb = _build_ambient(args)
    form_list = _form_list(args, amb)
    if args.element is None and args.projector is None:
        raise AgcError("analyze needs --element or --projector")
    if args.projector is not None:
        with open(args.projector) as fh:
            proj = operators.from_json(fh.read())
        report = {
            "ambient": _ambient_info(proj.ambient),
            "projector_file": args.projector,
            "fg_linear": proj.is_fg_linear(),
            "projector": proj.is_projector(),
            "self_adjoint": {
                f.tag: operators.is_self_adjoint(f, proj)
                for f in form_list if f.is_trace
            },
            "image": _describe_code(operators.image(proj), form_list, args.cap),
        }
    else:
        e = parse_element(amb, args.element)
        report = {
            "ambient": _ambient_info(amb),
            "element": format_element(e),
            "idempotent": e.is_idempotent,
            "warnings": [],
        }
        if not e:
            report["warnings"].append("zero element: reports describe the zero code")
        restricted = codes.restricted_code(e)
        report["restricted_code"] = _describe_code(restricted, form_list, args.cap)
        report["ideal_code"] = _describe_code(codes.ideal_code(e), form_list, args.cap)
        if report["idempotent"]:
            crit = {}
            for form in form_list:
                if not form.is_trace:
                    continue
                gram = codes.gram_on_fg(form, e)
                crit[form.tag] = {
                    "gram_rank": linalg.fm_rank(amb.tower, gram),
                    "lcd_criterion": codes.lcd_criterion_rhoe(form, e),
                    "selfdual_criterion": codes.selfdual_criterion_rhoe(form, e),
                    "cross_check": "consistent",
                }
            report["criteria"] = crit
            report["star_complement"] = bool(e.star() == amb.one() - e)
            if amb.m % 2 == 0:
                report["conj_star_complement"] = bool(e.conj().star() == amb.one() - e)
        else:
            report["warnings"].append(
                "element is not idempotent; Gram criteria omitted"
            )
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        _print_tree(report)
    for w in report.get("warnings", []):
        print(f"warning: {w}", file=sys.stderr)
    return 0


def _print_tree(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                print(f"{pad}{key}:")
                _print_tree(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)):
                _print_tree(value, indent)
            else:
                print(f"{pad}- {value}")
    else:
        print(f"{pad}{obj}")


def _is_flat_list(value):
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) for v in value
    )


# ---------------------------------------------------------------------------
# search


_PREDICATES = ("all", "lcd", "self-dual", "ideal-lcd", "ideal-self-dual")


def _parse_predicate(text):
    text = text.strip()
    if text.lower() == "all":
        return None, "all"
    head, _, rest = text.partition("-")
    rest = rest.lower()
    usage = (
        f"unknown predicate {text!r}; use all or <FORM>-lcd, <FORM>-self-dual, "
        "<FORM>-ideal-lcd, <FORM>-ideal-self-dual"
    )
    try:
        form = forms.parse_form(head)
    except AgcError:
        raise AgcError(usage) from None
    if rest not in ("lcd", "self-dual", "ideal-lcd", "ideal-self-dual"):
        raise AgcError(usage)
    return form, rest


def _parse_support(amb, text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.startswith("g"):
            tok = tok[1:]
        idx = int(tok)
        if not 0 <= idx < amb.n:
            raise AgcError(f"support index {idx} out of range")
        out.append(idx)
    return out


def cmd_search(args):
    amb = _build_ambient(args)
    support = _parse_support(amb, args.support) if args.support else None
    pred_form, pred_name = _parse_predicate(args.predicate)
    hits = []
    found = codes.enumerate_idempotents(amb, support=support, pool=args.coeffs,
                                        cap=args.cap)
    trace_list = list(forms.trace_forms_for(amb))
    for e in found:
        restricted = codes.restricted_code(e)
        ideal = codes.ideal_code(e)
        entry = {
            "element": format_element(e),
            "restricted": {
                "dim_F": restricted.dim_f,
                "parameters": _parameters_entry(restricted, args.cap)["display"],
                "forms": {
                    f.tag: {"lcd": codes.is_lcd(f, restricted),
                            "self_dual": codes.is_self_dual(f, restricted)}
                    for f in trace_list
                },
            },
            "ideal": {
                "dim_F": ideal.dim_f,
                "parameters": _parameters_entry(ideal, args.cap)["display"],
                "forms": {
                    f.tag: {"lcd": codes.is_lcd(f, ideal),
                            "self_dual": codes.is_self_dual(f, ideal)}
                    for f in trace_list
                },
            },
            "star_complement": bool(e.star() == amb.one() - e),
        }
        if amb.m % 2 == 0:
            entry["conj_star_complement"] = bool(e.conj().star() == amb.one() - e)
        if pred_name == "all":
            hits.append(entry)
            continue
        tag = pred_form.tag
        if tag not in entry["restricted"]["forms"]:
            continue
        if pred_name == "lcd" and entry["restricted"]["forms"][tag]["lcd"]:
            hits.append(entry)
        elif pred_name == "self-dual" and entry["restricted"]["forms"][tag]["self_dual"]:
            hits.append(entry)
        elif pred_name == "ideal-lcd" and entry["ideal"]["forms"][tag]["lcd"]:
            hits.append(entry)
        elif pred_name == "ideal-self-dual" and entry["ideal"]["forms"][tag]["self_dual"]:
            hits.append(entry)
    report = {
        "ambient": _ambient_info(amb),
        "scan": {
            "support": support if support is not None else list(range(amb.n)),
            "coefficients": args.coeffs,
            "idempotents_found": len(found),
        },
        "predicate": args.predicate,
        "hits": hits,
    }
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        print(f"scanned ambient {report['ambient']['field']} / {report['ambient']['group']}")
        print(f"idempotents found: {len(found)}; predicate {args.predicate!r} hits: {len(hits)}")
        for entry in hits:
            print(f"  e = {entry['element']}")
            print(f"    FGe: {entry['restricted']['parameters']}  "
                  f"{entry['restricted']['forms']}")
            print(f"    KGe: {entry['ideal']['parameters']}  "
                  f"star_complement={entry['star_complement']}")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="agcodes",
        description="Additive left group codes in finite group algebras: "
                    "verify the built-in worked examples, analyze elements and "
                    "projectors, and search for idempotents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-paper", help="run the embedded worked-example suites")
    vp.add_argument("--json", action="store_true", help="machine-readable report")
    vp.add_argument("--inject-fault", action="store_true",
                    help="negative control: corrupt a modulus so the suite fails")
    vp.set_defaults(func=cmd_verify_paper)

    an = sub.add_parser("analyze", help="analyze an element or a projector file")
    an.add_argument("--field", required=True, help="e.g. 'q=2 m=3' or 'q=2,m=3'")
    an.add_argument("--group", required=True,
                    help="cyclic:<k>, dihedral:<k>, symmetric:<k>, "
                         "product:<spec>x<spec>, table:<path>")
    an.add_argument("--element", help="element literal, e.g. '1 + g + g^2'")
    an.add_argument("--projector", help="path to an operator JSON file")
    an.add_argument("--form", action="append",
                    help="comma separated form tags (E, TE, H, TH)")
    an.add_argument("--cap", type=int, default=codes.DEFAULT_DISTANCE_CAP,
                    help="codeword enumeration cap for exact distances")
    an.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=cmd_analyze)

    se = sub.add_parser("search", help="enumerate idempotents and filter by predicate")
    se.add_argument("--field", required=True)
    se.add_argument("--group", required=True)
    se.add_argument("--support", help="comma separated positions, e.g. 'g2,g4'")
    se.add_argument("--coeffs", default="K", choices=["K", "F"],
                    help="coefficient pool for the scan")
    se.add_argument("--predicate", default="all",
                    help="all, <FORM>-lcd, <FORM>-self-dual, <FORM>-ideal-lcd, "
                         "<FORM>-ideal-self-dual (FORM is TE or TH)")
    se.add_argument("--cap", type=int, default=codes.DEFAULT_SCAN_CAP,
                    help="scan size cap")
    se.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    se.add_argument("--json", action="store_true")
    se.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AgcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

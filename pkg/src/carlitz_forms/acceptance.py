"""The numbered acceptance checks, shared by ``carlitz-forms selfcheck`` and the test suite.

Each check returns a dict with ``id``, ``name``, ``pass``, ``seconds``,
``budget`` (seconds) and ``detail``.  Equalities are exact; a check also
fails when it overruns its time budget.
"""

from __future__ import annotations

import random
import time

from .algebra import PolyA, RatK, ctx_for_q, is_irreducible, monic_enumerate


def _theta(q):
    ctx = ctx_for_q(q)
    return ctx, PolyA.theta(ctx)


def goss_oracle():
    """verify_goss_identity for q in {2, 3}, all monic primes of degree <= 2, k <= 12."""
    from .goss import verify_goss_identity

    failures = []
    count = 0
    for q in (2, 3):
        ctx = ctx_for_q(q)
        for d in (1, 2):
            for g in monic_enumerate(ctx, d):
                if not is_irreducible(g):
                    continue
                for k in range(1, 13):
                    count += 1
                    if not verify_goss_identity(g, k, k + 2 * q**d):
                        failures.append(f"q={q} g={g} k={k}")
    return not failures, {"identities": count, "failures": failures}


def goss_structure():
    """Monic degree n, no constant term, X^n for n <= q, G_(pn) = G_n^p, for two lattices."""
    from .carlitz import carlitz_exp, torsion_exp
    from .goss import _needed_index, goss_table
    from .useries import USeriesK

    problems = []
    for q in (2, 3):
        ctx, T = _theta(q)
        p = ctx.p
        top = max(40, 20 * p)
        for name, lattice in (("carlitz", carlitz_exp(ctx, _needed_index(q, top))), ("torsion", torsion_exp(T + 1))):
            table = goss_table(lattice, top)
            for n in range(1, 41):
                c = table.coefficients(n)
                if len(c) != n + 1 or c[n] != RatK.one(ctx) or not c[0].is_zero():
                    problems.append(f"q={q} {name}: G_{n} not monic of degree {n} without constant term")
                if n <= q and any(not x.is_zero() for x in c[:n]):
                    problems.append(f"q={q} {name}: G_{n} is not X^{n}")
            for n in range(1, 21):
                g = USeriesK(table[n])
                lhs = USeriesK(table[p * n])
                if (g**p).truncate(p * n + 1) != lhs:
                    problems.append(f"q={q} {name}: G_{p * n} != G_{n}^{p}")
    return not problems, {"problems": problems}


def h_delta_identities():
    """f_(q+1,1) = h and f_(q^2-1,q-1) = Delta to u^(2q^3); h^(q-1) = c Delta."""
    from .forms import delta_form, h_delta_constant, h_form, petrov_form

    rows = []
    ok = True
    for q in (2, 3):
        ctx = ctx_for_q(q)
        N = 2 * q**3
        h, delta = h_form(ctx, N), delta_form(ctx, N)
        f_h, _ = petrov_form(ctx, q + 1, 1, N)
        f_d, _ = petrov_form(ctx, q * q - 1, q - 1, N)
        c_short, holds_short = h_delta_constant(ctx, q**3)
        c_long, holds_long = h_delta_constant(ctx, N)
        scalar = c_long.den.degree == 0 and c_long.num.degree == 0
        row = {
            "q": q,
            "h": f_h == h,
            "delta": f_d == delta,
            "c": str(c_long),
            "c_stable": c_short == c_long and holds_short and holds_long and scalar,
        }
        ok = ok and row["h"] and row["delta"] and row["c_stable"]
        rows.append(row)
    return ok, {"rows": rows}


def admissibility_equivalence():
    """n <= p^ord_p(k-n)  <=>  base-p digits of k and n agree through index floor(log_p n)."""
    from .forms import _char, digit_condition, power_condition

    counter = []
    tested = 0
    for q in (2, 3, 4):
        p = _char(q)
        for k in range(2, 501):
            for n in range(1, k):
                tested += 1
                if power_condition(k, n, p) != digit_condition(k, n, p):
                    counter.append((q, k, n))
    detail = {"pairs": tested, "counterexamples": len(counter), "first": [list(c) for c in counter[:5]]}
    return not counter, detail


def petrov_eigenforms():
    """T_g f_(k,n) = g^n f_(k,n) to u^100, q = 3, every admissible k <= 12, three primes."""
    from .forms import admissible_pairs, petrov_forms
    from .hecke import HeckeCtx, eigen_check

    ctx, T = _theta(3)
    window = 100
    pairs = admissible_pairs(3, 12)
    primes = (T, T + 1, T * T + 1)
    n_in = max((window - 1) * 3 ** int(g.degree) + 1 for g in primes)
    forms = petrov_forms(ctx, pairs, n_in)
    failures = []
    checks = 0
    for g in primes:
        N = (window - 1) * 3 ** int(g.degree) + 1
        for (k, n), (f, _) in zip(pairs, forms):
            report = eigen_check(f.truncate(N), HeckeCtx(g, k, N), g**n)
            checks += 1
            if not report["pass"] or report["checked_window"] < window:
                failures.append({"g": str(g), "k": k, "n": n, "report": report})
    return not failures, {"pairs": [list(p) for p in pairs], "checks": checks, "failures": failures}


def vadic_convergence():
    """ord_v(fhat - f_(k_i,1)) strictly increasing and >= i over 6 steps.

    q = 3, v = theta, s = (1, y) with y = (0, 2, 2, 2, 2, 2, 2, 2) in base 3,
    T = 8, residues mod theta^32, window u^100.
    """
    from .vadic import VContext, convergence_table, sv_membership, weight

    ctx, T = _theta(3)
    vctx = VContext(T, 32, 8)
    y = sum(d * 3**i for i, d in enumerate((0, 2, 2, 2, 2, 2, 2, 2)))
    s = weight(vctx, 1, y)
    rows = convergence_table(s, 1, 6, 100, vctx)
    ords = [r.get("ord") for r in rows]
    ok = all(r["admissible"] for r in rows)
    ok = ok and all(b > a for a, b in zip(ords, ords[1:]))
    ok = ok and all(o >= r["step"] for o, r in zip(ords, rows))
    detail = {
        "s": s.to_json(),
        "in_Sv": sv_membership(s, 1, vctx),
        "rows": [{k: r.get(k) for k in ("step", "m", "k", "ord", "exact")} for r in rows],
    }
    return ok, detail


def decomposition():
    """f0 + f1 = f, closed form of f1, eigen properties and the f1 identity, q = 3, v = theta."""
    from .hecke import HeckeCtx, compare_report, decompose, eigen_check, f1_identity_check, hecke_hat

    ctx, T = _theta(3)
    window = 100
    N = (window - 1) * 3 + 1
    rows = []
    ok = True
    for k0, n in ((4, 1), (8, 1)):
        dec = decompose(ctx, k0, n, [T], N)
        g = T + 1
        hg, hv = HeckeCtx(g, k0, N), HeckeCtx(T, k0, N)
        hat = compare_report(hecke_hat(hv, dec.f0), dec.f0.truncate(hv.out_trunc).scale(T**n))
        reports = {
            "sum": dec.sum_check(),
            "f1_closed_form": dec.closed_check(),
            "f0_eigen": eigen_check(dec.f0, hg, g**n),
            "f1_eigen": eigen_check(dec.f1, hg, g**n),
            "f0_hat_eigen": hat,
            "f1_identity": f1_identity_check(dec.f1, dec.f0, hv, n),
        }
        row = {name: r["pass"] and r["checked_window"] >= window for name, r in reports.items()}
        row.update({"k0": k0, "n": n})
        ok = ok and all(v for key, v in row.items() if key not in ("k0", "n"))
        rows.append(row)
    return ok, {"rows": rows}


def fhat_consistency():
    """fhat(embed(k0 - 1), 1) mod theta^32 equals the reduced f0 of f_(k0,1) to u^100."""
    from .vadic import VContext, embed_weight, f0_reduced, fhat

    ctx, T = _theta(3)
    vctx = VContext(T, 32)
    rows = []
    for k0 in (4, 8):
        series, _ = fhat(embed_weight(k0 - 1, vctx), 1, 100, vctx)
        rows.append({"k0": k0, "equal": series == f0_reduced(k0, 1, 100, vctx)})
    return all(r["equal"] for r in rows), {"rows": rows}


def kernel_invariants():
    """u_ab = u_a o u_b, the exponential functional equation, pow_weight homomorphism."""
    from .carlitz import carlitz_exp
    from .useries import u_sub_a
    from .vadic import VContext, embed_weight, pow_weight, weight

    problems = []
    for q in (2, 3):
        ctx, T = _theta(q)
        N = q**3
        for a in (T, T + 1):
            for b in (T, T + 1):
                if u_sub_a(a, N).compose(u_sub_a(b, N)) != u_sub_a(a * b, N):
                    problems.append(f"q={q}: u_({a}*{b}) != u_{a} o u_{b}")
        alphas = carlitz_exp(ctx, 6).alphas
        for i in range(1, 7):
            lhs = alphas[i] * RatK(T ** (q**i))
            if lhs != alphas[i] * RatK(T) + alphas[i - 1] ** q:
                problems.append(f"q={q}: functional equation fails at index {i}")
    rng = random.Random(20240611)
    ctx, T = _theta(3)
    cases = 0
    for v in (T, T * T + 1):
        vctx = VContext(v, 12)
        mod = vctx.modulus
        for _ in range(25):
            cases += 1
            a = PolyA.from_ints(ctx, [rng.randrange(3) for _ in range(rng.randrange(1, 5))] + [1])
            b = PolyA.from_ints(ctx, [rng.randrange(3) for _ in range(rng.randrange(1, 5))] + [1])
            if (a % v).is_zero() or (b % v).is_zero():
                a = a + 1 if (a % v).is_zero() else a
                b = b + 1 if (b % v).is_zero() else b
            s = weight(vctx, rng.randrange(10**6), rng.randrange(10**6))
            t = weight(vctx, rng.randrange(10**6), rng.randrange(10**6))
            m = rng.randrange(200)
            checks = [
                pow_weight(a, s + t, vctx) == (pow_weight(a, s, vctx) * pow_weight(a, t, vctx)) % mod,
                pow_weight(a * b, s, vctx) == (pow_weight(a, s, vctx) * pow_weight(b, s, vctx)) % mod,
                pow_weight(a, embed_weight(m, vctx), vctx) == a.powmod(m, mod),
            ]
            if not all(checks):
                problems.append(f"pow_weight: a={a} b={b} s={s.to_json()} t={t.to_json()} m={m}")
    return not problems, {"random_cases": cases, "problems": problems}


def cli_behaviour():
    """Round trips, byte-identical reruns and every documented exit code."""
    import json

    from .cli import run
    from .errors import ParseError
    from .serialize import from_text, to_text
    from .useries import USeriesK
    from .vadic import VContext, embed_weight, fhat

    problems = []
    ctx, T = _theta(3)
    rng = random.Random(7)
    for _ in range(5):
        coeffs = []
        for _ in range(12):
            num = PolyA.from_ints(ctx, [rng.randrange(3) for _ in range(rng.randrange(0, 4))])
            den = PolyA.from_ints(ctx, [rng.randrange(3) for _ in range(rng.randrange(0, 3))] + [1])
            coeffs.append(RatK(num, den))
        f = USeriesK.from_coeffs(ctx, coeffs)
        if from_text(to_text(f)) != f:
            problems.append("USeriesK round trip")
    vctx = VContext(T + 1, 8)
    vs, _ = fhat(embed_weight(3, vctx), 2, 30, vctx)
    if from_text(to_text(vs)) != vs:
        problems.append("VSeries round trip")
    doc = json.loads(to_text(USeriesK.from_coeffs(ctx, [RatK(T, T + 1)], 1)))
    doc["coefficients"] = ["T/(2*T+1)"]
    try:
        from_text(json.dumps(doc))
        problems.append("non-monic denominator accepted")
    except ParseError:
        pass

    base = ["expand", "--family", "petrov", "--q", "3", "--k", "4", "--n", "1", "--trunc", "50", "--json"]
    code, first = run(base)
    _, second = run(base)
    if code != 0 or first != second:
        problems.append("expand is not deterministic or failed")
    code_h, h_text = run(["expand", "--family", "h", "--q", "3", "--trunc", "50", "--json"])
    if code_h != 0 or from_text(first) != from_text(h_text):
        problems.append("f_(4,1) != h at q = 3")
    expected = {
        0: ["usub", "--q", "3", "--a", "T+1", "--trunc", "10", "--json"],
        1: ["expand", "--family", "nonsense", "--q", "3"],
        2: ["expand", "--family", "petrov", "--q", "3", "--k", "5", "--n", "2", "--trunc", "10", "--json"],
        3: ["vadic", "interpolate", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--M", "32", "--T", "2"],
        4: ["selfcheck", "--only", "4", "--json"],
    }
    codes = {}
    for want, argv in expected.items():
        got, text = run(argv)
        codes[want] = got
        if got != want:
            problems.append(f"exit code {got} (wanted {want}) for {' '.join(argv)}")
        if want in (1, 2, 3) and "--json" in argv and '"error"' not in text:
            problems.append(f"no error field for {' '.join(argv)}")
    _, err = run(expected[2])
    if "k-2n" not in err:
        problems.append("domain error does not name the failed condition")
    return not problems, {"exit_codes": codes, "problems": problems}


CRITERIA = [
    (1, "Goss oracle certification", goss_oracle, 10),
    (2, "Goss polynomial structure", goss_structure, 5),
    (3, "h and Delta as Petrov forms", h_delta_identities, 30),
    (4, "admissibility digit equivalence", admissibility_equivalence, 5),
    (5, "Petrov forms are Hecke eigenforms", petrov_eigenforms, 60),
    (6, "v-adic convergence", vadic_convergence, 60),
    (7, "decomposition by divisibility", decomposition, 60),
    (8, "fhat agrees with f0", fhat_consistency, 30),
    (9, "kernel invariants", kernel_invariants, 10),
    (10, "CLI behaviour", cli_behaviour, 5),
]


def run_criterion(number: int) -> dict:
    for cid, name, fn, budget in CRITERIA:
        if cid == number:
            start = time.perf_counter()
            ok, detail = fn()
            seconds = time.perf_counter() - start
            return {
                "id": cid,
                "name": name,
                "pass": bool(ok) and seconds <= budget,
                "exact_pass": bool(ok),
                "seconds": round(seconds, 2),
                "budget": budget,
                "detail": detail,
            }
    raise KeyError(number)


def run_criteria(only=None) -> list[dict]:
    numbers = [c[0] for c in CRITERIA] if not only else list(only)
    return [run_criterion(n) for n in numbers]


def summary_line(result: dict) -> str:
    status = "PASS" if result["pass"] else "FAIL"
    timing = f"{result['seconds']:.2f}s of {result['budget']}s"
    return f"[{status}] criterion {result['id']:>2}: {result['name']} ({timing})"

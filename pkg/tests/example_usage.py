#!/usr/bin/env python3
"""
Example usage of quiverhh as a library, on the algebras in tests/fixtures
"""
from app.core.dependencies import ComputationContext
from app.services.cohomology import cobound_reduce, cohomology_basis
from app.services.deformation.crosscheck import crosscheck_mc
from app.services.deformation.gauge import gauge_reduce
from app.services.deformation.star import solve_mc_first_order
from app.services.lifting.bracket import bracket, maurer_cartan_check
from app.services.lifting.homotopy import solve_homotopy_lifting, verify_homotopy
from app.services.lifting.recurrence import recurrence_sequence
from app.services.resolution.verify import verify_complex
from tests.helpers import cochain, fixture_path


def show_quotient_and_resolution():
    """Reduction system, basis and Koszul resolution of A1"""

    print("quiverhh - Walkthrough")
    print("=" * 50)

    context = ComputationContext.from_file(fixture_path("A1.json"), max_degree=4)

    print("\n1. Reduction rules:")
    for rule in context.system.rules:
        print(f"  - {rule.text}")

    print("\n2. Overlap ambiguities:")
    for resolution in context.diamond.resolutions:
        status = "resolvable" if resolution.resolvable else "NOT resolvable"
        print(f"  - {resolution.overlap.path.text}: {status}")

    print("\n3. Irreducible basis:")
    print("  " + ", ".join(p.text for p in context.quotient.basis().paths))

    print("\n4. Resolution generators:")
    K = context.complex
    for n in range(K.max_degree + 1):
        print(f"  K_{n}: " + ", ".join(g.tensor.text for g in K.generators[n]))
    report = verify_complex(K)
    print(f"  verification: {'passed' if report.passed else 'FAILED'} ({len(report.checks)} checks)")
    return context


def show_cohomology(context):
    """HH^2 and a class comparison"""

    print("\n5. Second Hochschild cohomology:")
    result = cohomology_basis(context.complex, 2)
    print(f"  dim C^2 = {result.cochain_dimension}, dim HH^2 = {result.dimension}")
    for representative in result.representatives:
        print(f"    {representative.text}")

    left = cobound_reduce(cochain(context, 2, "0", "0", "0", "c"))
    right = cobound_reduce(cochain(context, 2, "a", "0", "0", "0"))
    print(f"  [(0, 0, 0, c)] = {left.text}")
    print(f"  [(a, 0, 0, 0)] = {right.text}")


def show_liftings():
    """Homotopy liftings, the recurrence and a bracket on k[x]/(x^2)"""

    context = ComputationContext.from_file(fixture_path("truncated_x2.json"), max_degree=5)
    K = context.complex
    eta = context.load_cochain(fixture_path("x2_eta.json"))
    chi = context.load_cochain(fixture_path("x2_chi.json"))

    print("\n6. Homotopy lifting of eta = (x):")
    psi_eta = solve_homotopy_lifting(eta)
    for m, r, text in psi_eta.rows():
        print(f"  psi(eps{m}_{r}) = {text}")
    print(f"  verified through degree {verify_homotopy(psi_eta).verified_through()}")

    print("\n7. Single-scalar recurrence:")
    run = recurrence_sequence(K, eta)
    for m, table in sorted(run.tables.items()):
        for r, (target, value) in table.items():
            print(f"  eps{m}_{r} -> {K.field.to_text(value)}*eps{m}_{target}")

    print("\n8. Bracket [eta, chi]:")
    psi_chi = solve_homotopy_lifting(chi)
    result = bracket(eta, chi, psi_eta, psi_chi)
    print(f"  raw: {result.raw.text}")
    print(f"  modulo coboundaries: {result.reduced.text}")


def show_deformations(context):
    """First-order deformations of A1 and the crosscheck with homotopy liftings"""

    print("\n9. First-order deformations:")
    family = solve_mc_first_order(context.quotient)
    print(f"  {len(family.constraints.params)} parameters, {family.dimension} free after the constraints")
    reduction = gauge_reduce(family)
    print(f"  {reduction.dimension} left after the gauge action:")
    for param in reduction.reduced:
        print(f"    - {param.name}")

    print("\n10. Crosscheck:")
    report = crosscheck_mc(context.complex, reduction)
    for direction in report.directions:
        mark = "✅" if direction.passed else "❌"
        print(f"  {mark} {direction.param}: ({', '.join(direction.cochain)})")
    print(f"  dimension agrees with HH^2: {report.dimension_agrees}")

    eta = cochain(context, 2, "a", "0", "0", "0")
    check = maurer_cartan_check(eta, solve_homotopy_lifting(eta, 3))
    print(f"  MC equation for (a, 0, 0, 0) holds: {check.holds}")


if __name__ == "__main__":
    print("Starting quiverhh walkthrough...")
    print("Note: set QUIVERHH_LOG_LEVEL=INFO to see the computation log on stderr")

    a1 = show_quotient_and_resolution()
    show_cohomology(a1)
    show_liftings()
    show_deformations(a1)

    print("\n" + "=" * 50)
    print("Walkthrough completed!")
    print("=" * 50)

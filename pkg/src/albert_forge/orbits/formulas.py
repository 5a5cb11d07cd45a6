"""Closed-form counts and group orders as exact Python integers."""

from __future__ import annotations

from fractions import Fraction

from ..gf import field_of_order


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    field_of_order(q)  # raises for non prime powers


def white_vectors(q: int) -> int:
    return (q**9 - 1) * (q**8 + q**4 + 1)


def white_points(q: int) -> int:
    return white_vectors(q) // (q - 1)


def suborbit_lengths(q: int) -> tuple[int, int]:
    """Sizes of the two nontrivial orbits of a white-point stabilizer."""
    return (
        q * (q**3 + 1) * (q**8 - 1) // (q - 1),
        q**8 * (q**4 + 1) * (q**5 - 1) // (q - 1),
    )


def primitive_idempotents(q: int) -> int:
    return q**8 * (q**8 + q**4 + 1)


def trace_zero_white(q: int) -> int:
    return (q**12 - 1) * (q**4 + 1)


def structured_case_counts(q: int) -> list[int]:
    """The six case counts of the white-vector enumeration."""
    s = q**7 - q**3
    t = q**7 + q**4 - q**3
    return [
        (q - 1) ** 3 * s**2,
        3 * (q - 1) ** 2 * s * t,
        3 * (q - 1) * t**2,
        (q**4 - 1) ** 2 * (q**6 - 1),
        3 * (q**4 - 1) ** 2 * (q**3 + 1),
        3 * (q**4 - 1) * (q**3 + 1),
    ]


def order_SE6(q: int) -> int:
    return q**36 * (q**12 - 1) * (q**9 - 1) * (q**8 - 1) * (q**6 - 1) * (q**5 - 1) * (q**2 - 1)


def order_F4(q: int) -> int:
    return q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1)


def order_2SE6(q: int) -> int:
    return q**36 * (q**12 - 1) * (q**9 + 1) * (q**8 - 1) * (q**6 - 1) * (q**5 + 1) * (q**2 - 1)


def twisted_orbit_lengths(q: int) -> tuple[int, int, int]:
    return (
        (q**9 + 1) * (q**12 - 1) * (q**5 + 1) // (q**2 - 1),
        (q**4 + 1) * (q**9 + 1) * q**5 * (q**12 - 1) * (q**3 - 1) // (q**2 - 1),
        q**16 * (q**8 + q**4 + 1) * (q**9 + 1) // (q + 1),
    )


# Standard order polynomials, used only as external inputs to the identities.
def so10_plus_core(q: int) -> int:
    """q^20 (q^8-1)(q^6-1)(q^4-1)(q^2-1)(q^5-1)."""
    return q**20 * (q**8 - 1) * (q**6 - 1) * (q**4 - 1) * (q**2 - 1) * (q**5 - 1)


def so10_constants(q: int) -> dict[str, Fraction]:
    """Multiples d of the core polynomial giving |SO10+(q)| and |Omega10+(q)|."""
    if q % 2:
        # Omega has index 2 in SO for odd q
        return {"SO": Fraction(1), "Omega": Fraction(1, 2)}
    # in characteristic 2, SO = O has the Dickson-invariant subgroup Omega of index 2
    return {"SO": Fraction(2), "Omega": Fraction(1)}


def spin9_order(q: int) -> int:
    return q**16 * (q**8 - 1) * (q**6 - 1) * (q**4 - 1) * (q**2 - 1)


def closed_form_counts(q: int) -> dict:
    _check_q(q)
    sub = suborbit_lengths(q)
    return {
        "q": q,
        "white_vectors": white_vectors(q),
        "white_points": white_points(q),
        "suborbits": [1, sub[0], sub[1]],
        "primitive_idempotents": primitive_idempotents(q),
        "trace_zero_white": trace_zero_white(q),
        "structured_cases": structured_case_counts(q),
        "order_SE6": order_SE6(q),
        "order_F4": order_F4(q),
        "order_2SE6": order_2SE6(q),
        "twisted_orbits": list(twisted_orbit_lengths(q)),
        "stabilizer_order_candidates": {
            name: int(q**16 * (q - 1) * d * so10_plus_core(q)) for name, d in so10_constants(q).items()
        },
    }


def order_identities(q: int) -> dict:
    """Check the orbit-stabilizer style identities exactly; returns a report."""
    _check_q(q)
    checks: dict[str, bool] = {}
    pts = white_points(q)
    se6 = order_SE6(q)
    matches = []
    for name, d in so10_constants(q).items():
        prod = pts * q**16 * (q - 1) * d * so10_plus_core(q)
        if prod == se6:
            matches.append(name)
    checks["SE6_orbit_stabilizer"] = bool(matches)
    checks["SE6_white_vector_form"] = white_vectors(q) * q**16 * so10_plus_core(q) == se6
    checks["F4_idempotent_orbit"] = primitive_idempotents(q) * spin9_order(q) == order_F4(q)
    twisted_total = sum(twisted_orbit_lengths(q))
    big_white_points = (q**18 - 1) * (q**16 + q**8 + 1) // (q**2 - 1)
    checks["2E6_orbit_sum"] = twisted_total == big_white_points == white_points(q**2)
    checks["2E6_stabilizer_of_type3"] = order_2SE6(q) % twisted_orbit_lengths(q)[2] == 0
    checks["white_split_by_trace"] = (q - 1) * primitive_idempotents(q) + trace_zero_white(q) == white_vectors(q)
    sub = suborbit_lengths(q)
    checks["rank3_partition"] = 1 + sub[0] + sub[1] == pts
    checks["structured_total"] = sum(structured_case_counts(q)) == white_vectors(q)
    return {
        "q": q,
        "checks": checks,
        "ok": all(checks.values()),
        "SO10_interpretation": matches,
        "characteristic_2": q % 2 == 0,
        "order_SE6": se6,
        "order_F4": order_F4(q),
        "order_2SE6": order_2SE6(q),
        "twisted_orbit_sum": twisted_total,
        "external_inputs": ["|SO10+(q)| and |Omega10+(q)| via d * q^20 (q^8-1)(q^6-1)(q^4-1)(q^2-1)(q^5-1)",
                            "|Spin9(q)| = q^16 (q^8-1)(q^6-1)(q^4-1)(q^2-1)"],
    }

"""Closed-form reduced matrix elements and the diagonal recurrence that fixes them.

The printed closed forms contain factors of the shape ``indicator(...) + 1``
whose arithmetic reading is ambiguous, one suspected index typo, and boundary
configurations where a zero numerator factor is paired against a zero
denominator factor.  Rather than hard-coding one reading, every candidate is a
ParsingVariant, and select_parsing_variant sweeps the diagonal recurrence over
all admissible (top row, subrow) configurations to find the unique reading
with identically vanishing residuals.  Values are exact: squares are rational,
square roots stay symbolic as (sign, radicand) pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import patterns as gz


def parity_indicator(kind: str, j: int) -> int:
    """1 if j has the named parity ('E' even / 'O' odd), else 0."""
    if kind == "E":
        return 1 if j % 2 == 0 else 0
    if kind == "O":
        return 1 if j % 2 != 0 else 0
    raise ValueError(f"kind must be 'E' or 'O', got {kind!r}")


class UncancelledZeroError(ArithmeticError):
    """A denominator zero survived pairing; the parsing variant is wrong."""


@dataclass(frozen=True)
class ParsingVariant:
    """One complete arithmetic reading of the closed-form factors.

    eo_reading: how ``indicator_sub(expr) + 1`` evaluates --
        'indicator_times_arg'  -> indicator(sub) * expr + 1
        'indicator_of_sum'     -> indicator(sub + expr) + 1
    zero_policy: 'cancel_pairs' cancels zero numerator factors against zero
        denominator factors before division; 'strict' never cancels.
    boson_tail: which top-row entry feeds the last denominator family of the
        bosonic expressions -- 'boson_entry' uses the entry being raised,
        'as_printed' the entry at the bare position index.
    """

    eo_reading: str = "indicator_times_arg"
    zero_policy: str = "cancel_pairs"
    boson_tail: str = "boson_entry"

    def short(self) -> str:
        eo = "mult" if self.eo_reading == "indicator_times_arg" else "argsum"
        zp = "cancel" if self.zero_policy == "cancel_pairs" else "strict"
        bt = "boson" if self.boson_tail == "boson_entry" else "printed"
        return f"{eo}:{zp}:{bt}"

    @classmethod
    def from_short(cls, text: str) -> "ParsingVariant":
        eo, zp, bt = text.split(":")
        return cls(
            eo_reading={"mult": "indicator_times_arg",
                        "argsum": "indicator_of_sum"}[eo],
            zero_policy={"cancel": "cancel_pairs", "strict": "strict"}[zp],
            boson_tail={"boson": "boson_entry", "printed": "as_printed"}[bt],
        )


ALL_VARIANTS = tuple(
    ParsingVariant(eo, zp, bt)
    for eo in ("indicator_times_arg", "indicator_of_sum")
    for zp in ("cancel_pairs", "strict")
    for bt in ("boson_entry", "as_printed")
)

# fixed once by the recurrence sweep (see select_parsing_variant and the tests)
DEFAULT_VARIANT = ParsingVariant()


@dataclass(frozen=True)
class SignedSqrtRational:
    """Exact value sign * sqrt(radicand), radicand a nonnegative rational."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")

    def __float__(self):
        return self.sign * float(self.radicand) ** 0.5


def _eo_factor(kind: str, sub: int, arg, variant: ParsingVariant):
    if variant.eo_reading == "indicator_times_arg":
        return parity_indicator(kind, sub) * arg + 1
    return parity_indicator(kind, sub + arg) + 1


def _ratio(num_factors, den_factors, variant: ParsingVariant) -> Fraction:
    """Divide factor products under the variant's zero-cancellation policy."""
    num = [Fraction(x) for x in num_factors]
    den = [Fraction(x) for x in den_factors]
    if variant.zero_policy == "cancel_pairs":
        nz = sum(1 for x in num if x == 0)
        dz = sum(1 for x in den if x == 0)
        cancel = min(nz, dz)
        if cancel:
            num = _drop_zeros(num, cancel)
            den = _drop_zeros(den, cancel)
    if any(x == 0 for x in den):
        raise UncancelledZeroError(
            f"zero denominator factor survives pairing (policy "
            f"{variant.zero_policy})")
    out = Fraction(1)
    for x in num:
        out *= x
    for x in den:
        out /= x
    return out


def _drop_zeros(factors, count):
    out = []
    for x in factors:
        if x == 0 and count:
            count -= 1
            continue
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# squared reduced matrix elements
# ---------------------------------------------------------------------------

def _squared_factors(top, k, p, m, n, variant):
    """(numerator list, denominator list, outer sign) for the k-th transition."""
    r = m + n
    mu = lambda i: top[i - 1]
    if k <= m and k % 2 == 0:
        num = [_eo_factor("E", m, mu(k) + m - n - k, variant)]
        num += [mu(k) - mu(j) - k + j for j in range(1, m + 1) if j != k]
        num += [mu(k) + mu(m + j) + m - j - k + 2 for j in range(1, n + 1)]
        den = []
        for j in range(1, m // 2 + 1):
            if j == k // 2:
                continue
            den.append(mu(k) - mu(2 * j) - k + 2 * j)
            den.append(mu(k) - mu(2 * j) - k + 2 * j + 1)
        den += [
            mu(k) + mu(m + j) + m - j - k + 2
            - parity_indicator("E", m + mu(m + j))
            for j in range(1, n + 1)
        ]
        return num, den, -1
    if k <= m:
        num = [p - mu(k) + k - 1,
               _eo_factor("O", m, mu(k) + m - n - k, variant)]
        num += [mu(k) - mu(j) - k + j for j in range(1, m + 1) if j != k]
        num += [mu(k) + mu(m + j) + m - j - k + 2 for j in range(1, n + 1)]
        den = []
        for j in range(1, (m + 1) // 2 + 1):
            if j == (k + 1) // 2:
                continue
            den.append(mu(k) - mu(2 * j - 1) - k + 2 * j - 1)
            den.append(mu(k) - mu(2 * j - 1) - k + 2 * j)
        den += [
            mu(k) + mu(m + j) + m - j - k + 2
            - parity_indicator("O", m + mu(m + j))
            for j in range(1, n + 1)
        ]
        return num, den, +1
    # bosonic slots
    kp = k - m
    mk = mu(m + kp)
    num = [
        _eo_factor("O", mk, mk - kp + n, variant),
        _eo_factor("E", m + mk, p + mk + m - kp, variant),
    ]
    num += [
        _eo_factor("E", m + mk, mu(2 * j) + mk - 2 * j - kp + m + 1, variant)
        for j in range(1, m // 2 + 1)
    ]
    num += [
        _eo_factor("O", m + mk, mu(2 * j - 1) + mk - 2 * j - kp + m + 2, variant)
        for j in range(1, (m + 1) // 2 + 1)
    ]
    num += [mu(m + j) - mk - j + kp for j in range(1, n + 1) if j != kp]
    den = [
        _eo_factor("E", m + mk, mu(2 * j - 1) + mk - 2 * j - kp + m + 1, variant)
        for j in range(1, (m + 1) // 2 + 1)
    ]
    tail_entry = mk if variant.boson_tail == "boson_entry" else mu(kp)
    den += [
        _eo_factor("O", m + mk, mu(2 * j) + tail_entry - 2 * j - kp + m, variant)
        for j in range(1, m // 2 + 1)
    ]
    den += [
        mu(m + j) - mk - j + kp
        - parity_indicator("O", mu(m + j) - mk)
        for j in range(1, n + 1) if j != kp
    ]
    return num, den, +1


def reduced_me_squared(top, k: int, p: int, m: int, n: int,
                       variant: ParsingVariant = DEFAULT_VARIANT) -> Fraction:
    """Square of the reduced matrix element for raising slot k of a top row.

    Returns 0 when the raised row is not an admissible top row (that
    transition does not exist in the module).
    """
    top = tuple(top)
    r = m + n
    if not 1 <= k <= r:
        raise ValueError(f"slot {k} out of range 1..{r}")
    if not gz.top_row_is_valid(top, m, n):
        raise ValueError(f"invalid top row {top}")
    if gz.raise_top_row(top, m, n, k) is None:
        return Fraction(0)
    num, den, outer = _squared_factors(top, k, p, m, n, variant)
    return outer * _ratio(num, den, variant)


def reduced_me(top, k: int, p: int, m: int, n: int,
               variant: ParsingVariant = DEFAULT_VARIANT) -> SignedSqrtRational:
    """Reduced matrix element as an exact signed square root."""
    sq = reduced_me_squared(top, k, p, m, n, variant)
    if sq < 0:
        raise ArithmeticError(
            f"negative squared matrix element {sq} at top={top}, k={k}, p={p}")
    if sq == 0:
        return SignedSqrtRational(0, Fraction(0))
    if k <= m:
        return SignedSqrtRational(1, sq)
    expo = sum(top[i - 1] for i in range(k + 1, m + n + 1))
    return SignedSqrtRational(-1 if expo % 2 else 1, sq)


# ---------------------------------------------------------------------------
# the diagonal recurrence
# ---------------------------------------------------------------------------

def recurrence_residual(top, subrow, p: int, m: int, n: int,
                        variant: ParsingVariant = DEFAULT_VARIANT) -> Fraction:
    """Left side minus right side of the diagonal two-row recurrence.

    Terms whose raised or lowered top row is inadmissible are absent from the
    module and are dropped; each surviving coefficient is evaluated as paired
    numerator/denominator factor lists under the variant's zero policy.
    """
    if n < 1:
        raise ValueError("the diagonal recurrence needs a bosonic last slot")
    r = m + n
    top = tuple(top)
    subrow = tuple(subrow)
    if len(subrow) != r - 1:
        raise ValueError("subrow must have length m+n-1")
    mu = lambda i: top[i - 1]
    nu = lambda i: subrow[i - 1]
    total = Fraction(0)

    for i in range(1, m + 1):
        theta = mu(i) - nu(i)
        if theta not in (0, 1):
            raise ValueError(f"invalid theta step at slot {i}")
        # raising term
        if theta == 0 and gz.raise_top_row(top, m, n, i) is not None:
            g = reduced_me_squared(top, i, p, m, n, variant)
            if g:
                num = [mu(i) - mu(j) - i + j + 1
                       for j in range(1, m + 1) if j != i]
                num += [mu(i) + nu(s) + 2 * m - i - s + 1
                        for s in range(m + 1, r)]
                den = [mu(i) - nu(j) - i + j
                       for j in range(1, m + 1) if j != i]
                den += [mu(i) + mu(s) + 2 * m - i - s + 2
                        for s in range(m + 1, r + 1)]
                total += _ratio(num, den, variant) * g
        # lowering term
        if theta == 1:
            lowered = gz.lower_top_row(top, m, n, i)
            if lowered is not None:
                g = reduced_me_squared(lowered, i, p, m, n, variant)
                if g:
                    num = [mu(i) - mu(j) - i + j
                           for j in range(1, m + 1) if j != i]
                    num += [mu(i) + nu(s) + 2 * m - i - s
                            for s in range(m + 1, r)]
                    den = [mu(i) - nu(j) - i + j - 1
                           for j in range(1, m + 1) if j != i]
                    den += [mu(i) + mu(s) + 2 * m - i - s + 1
                            for s in range(m + 1, r + 1)]
                    total += _ratio(num, den, variant) * g

    for q in range(m + 1, r + 1):
        if gz.raise_top_row(top, m, n, q) is not None:
            g = reduced_me_squared(top, q, p, m, n, variant)
            if g:
                num = [mu(j) + mu(q) + 2 * m - j - q + 1
                       for j in range(1, m + 1)]
                num += [mu(q) - nu(s) - q + s + 1 for s in range(m + 1, r)]
                den = [nu(j) + mu(q) + 2 * m - j - q + 2
                       for j in range(1, m + 1)]
                den += [mu(q) - mu(s) - q + s
                        for s in range(m + 1, r + 1) if s != q]
                total += _ratio(num, den, variant) * g
        lowered = gz.lower_top_row(top, m, n, q)
        if lowered is not None:
            g = reduced_me_squared(lowered, q, p, m, n, variant)
            if g:
                num = [mu(j) + mu(q) + 2 * m - j - q
                       for j in range(1, m + 1)]
                num += [mu(q) - nu(s) - q + s for s in range(m + 1, r)]
                den = [nu(j) + mu(q) + 2 * m - j - q + 1
                       for j in range(1, m + 1)]
                den += [mu(q) - mu(s) - q + s - 1
                        for s in range(m + 1, r + 1) if s != q]
                total += _ratio(num, den, variant) * g

    rhs = p + 2 * (sum(top) - sum(subrow))
    return total - rhs


# ---------------------------------------------------------------------------
# variant selection
# ---------------------------------------------------------------------------

def recurrence_configs(m: int, n: int, level_max: int):
    """All admissible (top row, subrow) pairs with level <= level_max."""
    for level in range(level_max + 1):
        for top in gz.top_rows_for_level(m, n, 1, level, cap=False):
            for subrow in gz.valid_subrows(top, m, n):
                yield top, subrow


def residual_sweep(m: int, n: int, p_values, level_max: int,
                   variant: ParsingVariant, max_failures: int = 10) -> dict:
    """Run the recurrence over the whole config range under one variant."""
    configs = 0
    failures = []
    errors = 0
    values = {}
    for p in p_values:
        for top, subrow in recurrence_configs(m, n, level_max):
            configs += 1
            try:
                res = recurrence_residual(top, subrow, p, m, n, variant)
                for k in range(1, m + n + 1):
                    if gz.raise_top_row(top, m, n, k) is not None:
                        values[(top, k, p)] = reduced_me_squared(
                            top, k, p, m, n, variant)
            except UncancelledZeroError:
                errors += 1
                continue
            if res != 0:
                if len(failures) < max_failures:
                    failures.append({"top": list(top), "subrow": list(subrow),
                                     "p": p, "residual": str(res)})
    return {"m": m, "n": n, "level_max": level_max,
            "p_values": list(p_values), "variant": variant.short(),
            "configs": configs, "failures": failures,
            "failure_count": len(failures), "errors": errors,
            "values": values,
            "ok": not failures and not errors}


class VariantSelectionError(RuntimeError):
    """Zero or several observationally distinct variants survived the sweep."""


def select_parsing_variant(m: int, n: int, p_samples, level_max: int) -> dict:
    """Pick the unique zero-residual reading of the closed forms.

    Variants that agree on every evaluated squared matrix element over the
    sweep are observationally identical and count as one; several *distinct*
    survivors (or none) raise VariantSelectionError.
    """
    p_samples = list(p_samples)
    if len(p_samples) < 2:
        raise ValueError("need at least two p samples")
    stats = []
    survivors = []
    for variant in ALL_VARIANTS:
        sweep = residual_sweep(m, n, p_samples, level_max, variant)
        stats.append({k: v for k, v in sweep.items() if k != "values"})
        if sweep["ok"]:
            survivors.append((variant, sweep["values"]))
    if not survivors:
        raise VariantSelectionError(
            f"no parsing variant has vanishing residuals: {stats}")
    tables = {frozenset(tab.items()) for _, tab in survivors}
    if len(tables) > 1:
        raise VariantSelectionError(
            "several observationally distinct variants survived: "
            + ", ".join(v.short() for v, _ in survivors))
    chosen = next(
        (v for v, _ in survivors if v == DEFAULT_VARIANT), survivors[0][0]
    )
    return {
        "m": m, "n": n, "p_samples": p_samples, "level_max": level_max,
        "selected": chosen, "survivors": [v.short() for v, _ in survivors],
        "per_variant": stats,
    }


def select_parsing_variant_multi(domains, p_samples, level_max: int) -> dict:
    """Joint selection across several (m, n) domains; see criterion sweeps."""
    p_samples = list(p_samples)
    alive = {v: {} for v in ALL_VARIANTS}
    per_variant = []
    for variant in ALL_VARIANTS:
        ok = True
        combined = {}
        for (m, n) in domains:
            sweep = residual_sweep(m, n, p_samples, level_max, variant)
            per_variant.append({k: v for k, v in sweep.items() if k != "values"})
            if not sweep["ok"]:
                ok = False
                break
            for key, val in sweep["values"].items():
                combined[(m, n) + key] = val
        if ok:
            alive[variant] = combined
        else:
            alive.pop(variant)
    if not alive:
        raise VariantSelectionError("no variant survives the joint sweep")
    tables = {frozenset(tab.items()) for tab in alive.values()}
    if len(tables) > 1:
        raise VariantSelectionError(
            "distinct variants survive the joint sweep: "
            + ", ".join(v.short() for v in alive))
    chosen = DEFAULT_VARIANT if DEFAULT_VARIANT in alive else next(iter(alive))
    return {"domains": list(domains), "p_samples": p_samples,
            "level_max": level_max, "selected": chosen,
            "survivors": [v.short() for v in alive],
            "per_variant": per_variant}

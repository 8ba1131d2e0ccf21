"""Empirical verification of the scheme's quantitative claims.

Monte Carlo estimators (Wilson 95% intervals, exact rational arithmetic) for
the correctness / unforgeability / transferability error rates and the core
forgery bound, plus exhaustive enumerations at tiny primes where the exact
rate or total-variation distance is computable by brute force.

A verdict is "pass" when the Wilson lower bound does not exceed the analytic
target by more than a slack of 3*sqrt(target/trials): the claims are upper
bounds, so an estimate is only damning when it sits significantly above the
target.  Acceptance tests additionally check two-sided containment where the
true rate is known to equal the target.

Every estimator is deterministic given (seed, p, strategy, trials).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Optional, Union

from .errors import EmptyExperiment, PrimeTooLarge, RoleMismatch, UnknownStrategy
from .field import Prime
from .hashing import derive_message_key, derive_receipt
from .net_sim import AdversaryHook, Envelope, Role
from .rng import Rng
from .sss import Weights
from .three_party import (
    ROUND_SETUP,
    ROUND_TRANSFER,
    HolderSetup,
    TransferValue,
    run_signing_session,
)
from .two_party import (
    Params,
    Signature,
    _assemble,
    _core_verify,
    keygen,
    sign,
    verify,
)

DEFAULT_SEED = b"silmarils/stats/default-seed\x00\x00\x00\x00"
DEFAULT_MESSAGE = b"harness message"

# Two-sided 95% normal quantile, kept rational so intervals stay exact.
Z95 = Fraction(196, 100)

# 5-variable enumerations are p^5 transcripts per compared value; 7^5 = 16807
# keeps the exhaustive secrecy computation under a couple of seconds.
EXHAUSTIVE_SECRECY_MAX = 7
EXHAUSTIVE_ATTACK_MAX = 7
EXHAUSTIVE_CORE_MAX = 13
EXHAUSTIVE_DV_MAX = 7

SUITES = ("correctness", "unforgeability", "transferability", "secrecy", "core", "all")


def _sqrt_upper(q: Fraction, scale: int = 10**24) -> Fraction:
    """Rational upper bound on sqrt(q), tight to about 1/scale."""
    if q < 0:
        raise ValueError("square root of a negative rational")
    a, b = q.numerator, q.denominator
    target = a * b * scale * scale
    root = isqrt(target)
    if root * root < target:
        root += 1
    return Fraction(root, b * scale)


def wilson_interval(successes: int, trials: int, z: Fraction = Z95):
    """Wilson score interval as exact rationals, widened by < 10^-24 so the
    returned pair always encloses the real-valued interval."""
    if trials <= 0:
        raise EmptyExperiment("Wilson interval needs at least one trial")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    z2 = z * z
    center = Fraction(successes) + z2 / 2
    disc = Fraction(successes * (trials - successes), trials) + z2 / 4
    half = z * _sqrt_upper(disc)
    denom = trials + z2
    low = max(Fraction(0), (center - half) / denom)
    high = min(Fraction(1), (center + half) / denom)
    return low, high


@dataclass(frozen=True)
class Estimate:
    """One measured rate against one analytic target."""

    name: str
    p: int
    trials: int
    successes: int
    point: Fraction
    wilson_95_low: Fraction
    wilson_95_high: Fraction
    target: Fraction
    slack: Fraction
    verdict: str
    note: str = ""

    def contains(self, value) -> bool:
        return self.wilson_95_low <= Fraction(value) <= self.wilson_95_high


def make_estimate(
    name: str, p: int, trials: int, successes: int, target: Fraction, note: str = ""
) -> Estimate:
    if trials <= 0:
        raise EmptyExperiment(f"{name}: zero trials estimate nothing")
    target = Fraction(target)
    low, high = wilson_interval(successes, trials)
    slack = 3 * _sqrt_upper(target / trials) if target else Fraction(0)
    verdict = "pass" if low <= target + slack else "fail"
    return Estimate(
        name=name,
        p=p,
        trials=trials,
        successes=successes,
        point=Fraction(successes, trials),
        wilson_95_low=low,
        wilson_95_high=high,
        target=target,
        slack=slack,
        verdict=verdict,
        note=note,
    )


@dataclass(frozen=True)
class ExactResult:
    """An exhaustively computed quantity compared against an exact target."""

    name: str
    p: int
    value: Fraction
    target: Fraction
    verdict: str
    note: str = ""


def exact_result(name: str, p: int, value, target, note: str = "") -> ExactResult:
    value, target = Fraction(value), Fraction(target)
    return ExactResult(
        name=name,
        p=p,
        value=value,
        target=target,
        verdict="pass" if value == target else "fail",
        note=note,
    )


# ---------------------------------------------------------------------------
# Attack strategies


@dataclass(frozen=True)
class AttackStrategy:
    """A named single-corruption attack with a documented analytic bound.

    build(prime, rng, forced) returns the AdversaryHook; forced parameters
    (ghat, offset, x_star, delta, delta_prime) replace the random draws so the
    exhaustive enumerations can sweep them.
    """

    name: str
    corrupted: Role
    bound: str
    build: Callable

    def hook(self, prime, rng: Rng, **forced) -> AdversaryHook:
        return self.build(prime, rng, forced)


def _substitute_guess_k1(prime, rng: Rng, forced: dict) -> AdversaryHook:
    # Corrupt P2 rewrites the transfer to (x*, sigma + g*(x* - x)); the result
    # passes P3's line check iff the guess g hits k1, so success rate is 1/p.
    def rewrite(env: Envelope, view) -> list:
        if env.round == ROUND_TRANSFER and isinstance(env.payload, TransferValue):
            t = env.payload
            g = forced.get("ghat")
            if g is None:
                g = prime.sample(rng)
            x_star = forced.get("x_star")
            if x_star is None:
                offset = forced.get("offset")
                if offset is None:
                    offset = prime.sample_unit(rng)
                x_star = t.x + offset
            forged = TransferValue(
                x=x_star,
                sigma=t.sigma + g * (x_star - t.x),
                message=t.message,
                sig_alg=t.sig_alg,
                nonce=t.nonce,
            )
            return [Envelope(env.round, env.sender, env.recipient, forged)]
        return [env]

    return AdversaryHook(corrupted=Role.P2, rewrite=rewrite)


def _inconsistent_line(prime, rng: Rng, forced: dict) -> AdversaryHook:
    # Corrupt P1 offsets P2's line points by (delta, delta_prime) while giving
    # P3 honest keys, then plays every later round honestly.  The tampering
    # survives the challenge exactly when delta_prime + e*delta = 0, one value
    # of e out of p; the transfer then fails at P3 while z2 = x.
    def rewrite(env: Envelope, view) -> list:
        if env.round == ROUND_SETUP and isinstance(env.payload, HolderSetup):
            h = env.payload
            delta = forced.get("delta")
            if delta is None:
                delta = prime.sample_unit(rng)
            delta_prime = forced.get("delta_prime")
            if delta_prime is None:
                delta_prime = prime.zero
            tampered = HolderSetup(
                x=h.x,
                x_prime=h.x_prime,
                sigma=h.sigma + delta,
                sigma_prime=h.sigma_prime + delta_prime,
                message=h.message,
                sig_alg=h.sig_alg,
                nonce=h.nonce,
            )
            return [Envelope(env.round, env.sender, env.recipient, tampered)]
        return [env]

    return AdversaryHook(corrupted=Role.P1, rewrite=rewrite)


STRATEGIES = {
    "substitute-guess-k1": AttackStrategy(
        name="substitute-guess-k1",
        corrupted=Role.P2,
        bound="1/p",
        build=_substitute_guess_k1,
    ),
    "inconsistent-line": AttackStrategy(
        name="inconsistent-line",
        corrupted=Role.P1,
        bound="1/p",
        build=_inconsistent_line,
    ),
}


def get_strategy(name: Union[str, AttackStrategy]) -> AttackStrategy:
    if isinstance(name, AttackStrategy):
        return name
    strategy = STRATEGIES.get(name)
    if strategy is None:
        known = ", ".join(sorted(STRATEGIES))
        raise UnknownStrategy(f"no attack strategy named {name!r} (known: {known})")
    return strategy


# ---------------------------------------------------------------------------
# Shared setup


def _as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


def _keys_for(prime: Prime, root: Rng):
    params = Params.generate(prime, root.fork(b"params"))
    return keygen(params, root.fork(b"keys"))


def _trial_rng(root: Rng, index: int) -> Rng:
    return root.fork(b"trial/" + index.to_bytes(8, "big"))


# ---------------------------------------------------------------------------
# Monte Carlo estimators


def estimate_correctness(
    p, trials: int, *, seed: bytes = DEFAULT_SEED, sessions: bool = False
) -> Estimate:
    """Honest-run failure rate; target 1/p.

    Fast path signs and verifies directly: the only honest failure mode is the
    verifier rejecting (the signer drew sigma4 = 0, rate exactly 1/p).  With
    sessions=True each trial runs the full three-party session and counts a
    failure whenever z2, z3, or the final interpretation misses x.
    """
    prime = _as_prime(p)
    if trials <= 0:
        raise EmptyExperiment("correctness: zero trials")
    root = Rng(seed)
    keys = _keys_for(prime, root)
    failures = 0
    if sessions:
        for i in range(trials):
            res = run_signing_session(
                keys, DEFAULT_MESSAGE, _trial_rng(root, i).seed, interpret=True
            )
            ok = res.outcome.z2 == res.x and res.outcome.z3 == res.x and res.accepted
            if not ok:
                failures += 1
        name = "correctness-sessions"
    else:
        rng = root.fork(b"sign")
        pk, k_sig = keys.pk, keys.k_sig
        for _ in range(trials):
            sig, _ = sign(keys, DEFAULT_MESSAGE, rng)
            if not verify(pk, k_sig, DEFAULT_MESSAGE, sig):
                failures += 1
        name = "correctness"
    return make_estimate(
        name,
        prime.value,
        trials,
        failures,
        Fraction(1, prime.value),
        note="failure = honest signature rejected (sigma4 = 0)",
    )


def _run_attack(
    prime: Prime,
    strategy: AttackStrategy,
    trials: int,
    seed: bytes,
    success: Callable,
    *,
    rushing: bool = True,
    forced: Optional[dict] = None,
) -> int:
    root = Rng(seed)
    keys = _keys_for(prime, root)
    forced = forced or {}
    successes = 0
    for i in range(trials):
        tri = _trial_rng(root, i)
        hook = strategy.hook(prime, tri.fork(b"adversary"), **forced)
        res = run_signing_session(
            keys, DEFAULT_MESSAGE, tri.seed, adversary=hook, rushing=rushing
        )
        if success(res):
            successes += 1
    return successes


def estimate_unforgeability(
    p,
    strategy,
    trials: int,
    *,
    seed: bytes = DEFAULT_SEED,
    rushing: bool = True,
    forced: Optional[dict] = None,
) -> Estimate:
    """Corrupt-P2 forgery rate: success = z3 outside {x, bottom}; target 1/p."""
    prime = _as_prime(p)
    strategy = get_strategy(strategy)
    if strategy.corrupted is not Role.P2:
        raise RoleMismatch(
            f"unforgeability needs a P2-corrupting strategy, {strategy.name} corrupts {strategy.corrupted.value}"
        )
    if trials <= 0:
        raise EmptyExperiment("unforgeability: zero trials")
    successes = _run_attack(
        prime,
        strategy,
        trials,
        seed,
        lambda res: res.outcome.z3 is not None and res.outcome.z3 != res.x,
        rushing=rushing,
        forced=forced,
    )
    return make_estimate(
        f"unforgeability/{strategy.name}",
        prime.value,
        trials,
        successes,
        Fraction(1, prime.value),
        note="success = z3 not in {x, bottom}",
    )


def estimate_transferability(
    p,
    strategy,
    trials: int,
    *,
    seed: bytes = DEFAULT_SEED,
    rushing: bool = True,
    forced: Optional[dict] = None,
) -> Estimate:
    """Corrupt-P1 divergence rate: success = z2 != z3 with z2 set; target 1/p."""
    prime = _as_prime(p)
    strategy = get_strategy(strategy)
    if strategy.corrupted is not Role.P1:
        raise RoleMismatch(
            f"transferability needs a P1-corrupting strategy, {strategy.name} corrupts {strategy.corrupted.value}"
        )
    if trials <= 0:
        raise EmptyExperiment("transferability: zero trials")
    successes = _run_attack(
        prime,
        strategy,
        trials,
        seed,
        lambda res: res.outcome.z2 is not None and res.outcome.z2 != res.outcome.z3,
        rushing=rushing,
        forced=forced,
    )
    return make_estimate(
        f"transferability/{strategy.name}",
        prime.value,
        trials,
        successes,
        Fraction(1, prime.value),
        note="success = z2 != z3 and z2 set",
    )


def estimate_core_forgery(
    p, trials: int, *, seed: bytes = DEFAULT_SEED, see_receipt: bool = False
) -> Estimate:
    """Uniform 5-tuples against a fresh uniform receipt; target 1/p.

    see_receipt=True plays the weakened game where the adversary learns r
    before choosing sigma5 and solves the acceptance identity; target 1.
    """
    prime = _as_prime(p)
    if trials <= 0:
        raise EmptyExperiment("core forgery: zero trials")
    root = Rng(seed)
    weights = Weights.generate(prime, root.fork(b"weights"))
    rng = root.fork(b"tuples")
    ratio = weights.w0 / weights.w1
    successes = 0
    for _ in range(trials):
        r = prime.sample(rng)
        if see_receipt:
            s1 = prime.sample(rng)
            s2 = prime.sample(rng)
            s3 = prime.sample(rng)
            s4 = prime.sample_unit(rng)
            m = s1 * s2
            s5 = m - ratio * (m - s3 + r * s4)
            sig = Signature(s1, s2, s3, s4, s5)
        else:
            sig = Signature(*(prime.sample(rng) for _ in range(5)))
        if _core_verify(weights, r, sig):
            successes += 1
    name = "core-forgery-weakened" if see_receipt else "core-forgery"
    target = Fraction(1) if see_receipt else Fraction(1, prime.value)
    return make_estimate(name, prime.value, trials, successes, target)


# ---------------------------------------------------------------------------
# Exhaustive enumerations


def exhaustive_core_forgery(p, *, seed: bytes = DEFAULT_SEED) -> Estimate:
    """Count accepting (m, sigma3, sigma4, sigma5, r) tuples over the full
    reduced grid.

    Acceptance depends on (sigma1, sigma2) only through m = sigma1*sigma2, so
    the tuple is represented as (m, 1, s3, s4, s5).  For every (m, s3, s4, s5)
    with s4 != 0 exactly one r accepts, so the count is (p-1)*p^3 of p^5.
    """
    prime = _as_prime(p)
    if prime.value > EXHAUSTIVE_CORE_MAX:
        raise PrimeTooLarge(
            f"exhaustive core forgery sweeps p^5 tuples; p = {prime.value} > {EXHAUSTIVE_CORE_MAX}"
        )
    weights = Weights.generate(prime, Rng(seed).fork(b"weights"))
    pv = prime.value
    elems = [prime.elt(i) for i in range(pv)]
    one = elems[1]
    successes = 0
    for m in elems:
        for s3 in elems:
            for s4 in elems:
                sig_head = (m, one, s3, s4)
                for s5 in elems:
                    sig = Signature(*sig_head, s5)
                    for r in elems:
                        if _core_verify(weights, r, sig):
                            successes += 1
    return make_estimate(
        "core-forgery-exhaustive",
        pv,
        pv**5,
        successes,
        Fraction(pv - 1, pv * pv),
        note="reduced grid (m, s3, s4, s5, r); expected count (p-1)*p^3",
    )


def exhaustive_unforgeability(p, *, seed: bytes = DEFAULT_SEED) -> Estimate:
    """Sweep (k1, k2, x', k2', e, guess): success iff guess = k1, rate 1/p."""
    prime = _as_prime(p)
    if prime.value > EXHAUSTIVE_ATTACK_MAX:
        raise PrimeTooLarge(
            f"exhaustive unforgeability sweeps p^6 sessions; p = {prime.value} > {EXHAUSTIVE_ATTACK_MAX}"
        )
    strategy = STRATEGIES["substitute-guess-k1"]
    root = Rng(seed)
    keys = _keys_for(prime, root)
    pv = prime.value
    elems = [prime.elt(i) for i in range(pv)]
    adv_rng = root.fork(b"adversary")
    one = elems[1]
    successes = 0
    trials = 0
    for k1 in elems:
        for k2 in elems:
            for x_prime in elems:
                for k2_prime in elems:
                    coins = (k1, k2, x_prime, k2_prime)
                    for e in elems:
                        for guess in elems:
                            hook = strategy.hook(
                                prime, adv_rng, ghat=guess, offset=one
                            )
                            res = run_signing_session(
                                keys,
                                DEFAULT_MESSAGE,
                                DEFAULT_SEED,
                                adversary=hook,
                                ic_coins=coins,
                                challenge_coin=e,
                            )
                            trials += 1
                            if res.outcome.z3 is not None and res.outcome.z3 != res.x:
                                successes += 1
    return make_estimate(
        "unforgeability-exhaustive",
        pv,
        trials,
        successes,
        Fraction(1, pv),
        note="grid (k1, k2, x', k2', e, guess); success iff guess = k1",
    )


def exhaustive_transferability(p, *, seed: bytes = DEFAULT_SEED) -> Estimate:
    """Sweep (e, delta != 0, delta'): success iff delta' + e*delta = 0."""
    prime = _as_prime(p)
    if prime.value > EXHAUSTIVE_ATTACK_MAX:
        raise PrimeTooLarge(
            f"exhaustive transferability sweeps p^2(p-1) sessions; p = {prime.value} > {EXHAUSTIVE_ATTACK_MAX}"
        )
    strategy = STRATEGIES["inconsistent-line"]
    root = Rng(seed)
    keys = _keys_for(prime, root)
    pv = prime.value
    elems = [prime.elt(i) for i in range(pv)]
    adv_rng = root.fork(b"adversary")
    successes = 0
    trials = 0
    for e in elems:
        for delta in elems[1:]:
            for delta_prime in elems:
                hook = strategy.hook(
                    prime, adv_rng, delta=delta, delta_prime=delta_prime
                )
                res = run_signing_session(
                    keys,
                    DEFAULT_MESSAGE,
                    DEFAULT_SEED,
                    adversary=hook,
                    challenge_coin=e,
                )
                trials += 1
                if res.outcome.z2 is not None and res.outcome.z2 != res.outcome.z3:
                    successes += 1
    return make_estimate(
        "transferability-exhaustive",
        pv,
        trials,
        successes,
        Fraction(1, pv),
        note="grid (e, delta, delta'); success iff delta' + e*delta = 0",
    )


def _signing_phase_view(net, role: Role) -> tuple:
    """Canonical bytes of everything the role received before the transfer."""
    view = net.views[role]
    return tuple(
        (env.round, env.sender.value, env.payload.to_wire())
        for env in view.received
        if env.round < ROUND_TRANSFER
    )


def _distinct_x_messages(keys, seed: bytes):
    base = run_signing_session(keys, b"secrecy/a", seed)
    for i in range(64):
        msg = b"secrecy/b%d" % i
        other = run_signing_session(keys, msg, seed)
        if other.x != base.x:
            return (b"secrecy/a", base.x), (msg, other.x)
    raise RuntimeError("could not find two messages with distinct values")


def estimate_secrecy_tv(p, *, seed: bytes = DEFAULT_SEED) -> Fraction:
    """Exact total variation between P3's signing-phase view distributions for
    two distinct authenticated values, by full enumeration of the installer's
    coins (k1, k2, x', k2') and the challenge e over F_p^5.

    The honest protocol gives TV = 0: the view determines sigma_e from
    (k1, k2, k2', e, x_e) and x_e = x' + e*x is uniform for uniform x'.
    """
    prime = _as_prime(p)
    if prime.value > EXHAUSTIVE_SECRECY_MAX:
        raise PrimeTooLarge(
            f"secrecy enumeration sweeps p^5 sessions per value; p = {prime.value} > {EXHAUSTIVE_SECRECY_MAX}"
        )
    root = Rng(seed)
    keys = _keys_for(prime, root)
    (msg_a, _), (msg_b, _) = _distinct_x_messages(keys, seed)
    pv = prime.value
    elems = [prime.elt(i) for i in range(pv)]
    counts = []
    for msg in (msg_a, msg_b):
        tally: dict = {}
        for k1 in elems:
            for k2 in elems:
                for x_prime in elems:
                    for k2_prime in elems:
                        coins = (k1, k2, x_prime, k2_prime)
                        for e in elems:
                            res = run_signing_session(
                                keys,
                                msg,
                                seed,
                                ic_coins=coins,
                                challenge_coin=e,
                                collect=True,
                            )
                            key = _signing_phase_view(res.net, Role.P3)
                            tally[key] = tally.get(key, 0) + 1
        counts.append(tally)
    total = pv**5
    count_a, count_b = counts
    l1 = sum(
        abs(count_a.get(k, 0) - count_b.get(k, 0))
        for k in set(count_a) | set(count_b)
    )
    return Fraction(l1, 2 * total)


def dv_transcript_tv(p, *, seed: bytes = DEFAULT_SEED) -> Fraction:
    """Exact total variation between honest and simulated signature tuples.

    Honest: the per-message key is the fixed PRF output; nuisances
    (b, d, eps, both slopes) enumerated over their full ranges (eps stands in
    for alpha*beta, whose product is uniform on the units).  Simulated: the
    stand-in key sweeps all of F_p.  The honest key can never collide with r,
    while the stand-in does with probability 1/p, so the distance is Theta(1/p)
    rather than 0.  Uses a message whose derived key and receipt are distinct
    and nonzero (the generic case; the exceptional messages occur with
    probability O(1/p)).
    """
    prime = _as_prime(p)
    if prime.value > EXHAUSTIVE_DV_MAX:
        raise PrimeTooLarge(
            f"DV transcript enumeration sweeps p^2(p-1)^3 tuples per key value; p = {prime.value} > {EXHAUSTIVE_DV_MAX}"
        )
    root = Rng(seed)
    keys = _keys_for(prime, root)
    kprime = r = None
    for i in range(64):
        msg = b"dv/%d" % i
        kprime = derive_message_key(keys.sk_K, msg)
        _, r = derive_receipt(keys.k_sig, msg, prime)
        if r and kprime != r:
            break
    else:
        raise RuntimeError("no generic message found")
    pv = prime.value
    elems = [prime.elt(i) for i in range(pv)]
    units = elems[1:]

    def tally(key_values) -> dict:
        out: dict = {}
        for kp in key_values:
            for b in units:
                for d in units:
                    for eps in units:
                        for slope_eps in elems:
                            for slope_k in elems:
                                sig = _assemble(
                                    keys.pk, kp, r, b, d, eps, slope_eps, slope_k
                                )
                                enc = sig.encode()
                                out[enc] = out.get(enc, 0) + 1
        return out

    honest = tally([kprime])
    simulated = tally(elems)
    h_total = (pv - 1) ** 3 * pv * pv
    s_total = h_total * pv
    l1 = sum(
        abs(Fraction(honest.get(t, 0), h_total) - Fraction(simulated.get(t, 0), s_total))
        for t in set(honest) | set(simulated)
    )
    return l1 / 2


# ---------------------------------------------------------------------------
# Suites and reporting


def run_suite(
    p, suite: str, trials: int, *, seed: bytes = DEFAULT_SEED
) -> list:
    """Run one named suite (or "all") and return Estimate/ExactResult rows.

    Exhaustive rows are included only where feasible (attacks at p <= 7, core
    grid at p <= 13, secrecy at p <= 7); asking for the secrecy suite on a
    larger prime raises PrimeTooLarge since it has no sampled fallback.
    """
    prime = _as_prime(p)
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}, got {suite!r}")
    pv = prime.value
    root = Rng(seed)

    def sub(label: bytes) -> bytes:
        return root.fork(label).seed

    results: list = []
    if suite in ("correctness", "all"):
        results.append(estimate_correctness(prime, trials, seed=sub(b"correctness")))
    if suite in ("unforgeability", "all"):
        results.append(
            estimate_unforgeability(
                prime, "substitute-guess-k1", trials, seed=sub(b"unforgeability")
            )
        )
        if pv <= EXHAUSTIVE_ATTACK_MAX:
            results.append(exhaustive_unforgeability(prime, seed=sub(b"uf-exhaustive")))
    if suite in ("transferability", "all"):
        results.append(
            estimate_transferability(
                prime, "inconsistent-line", trials, seed=sub(b"transferability")
            )
        )
        if pv <= EXHAUSTIVE_ATTACK_MAX:
            results.append(
                exhaustive_transferability(prime, seed=sub(b"trans-exhaustive"))
            )
    if suite in ("secrecy", "all"):
        if pv <= EXHAUSTIVE_SECRECY_MAX:
            tv = estimate_secrecy_tv(prime, seed=sub(b"secrecy"))
            results.append(
                exact_result(
                    "secrecy-tv",
                    pv,
                    tv,
                    Fraction(0),
                    note="exhaustive TV of P3's signing-phase view across two values",
                )
            )
        elif suite == "secrecy":
            raise PrimeTooLarge(
                f"secrecy suite is exhaustive-only; p = {pv} > {EXHAUSTIVE_SECRECY_MAX}"
            )
    if suite in ("core", "all"):
        results.append(estimate_core_forgery(prime, trials, seed=sub(b"core")))
        if pv <= EXHAUSTIVE_CORE_MAX:
            results.append(exhaustive_core_forgery(prime, seed=sub(b"core-exhaustive")))
    return results


def _frac_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def result_json_line(res) -> str:
    """One result as a canonical JSON line (sorted keys, rationals as n/d)."""
    if isinstance(res, Estimate):
        record = {
            "kind": "estimate",
            "name": res.name,
            "p": res.p,
            "trials": res.trials,
            "successes": res.successes,
            "point": _frac_str(res.point),
            "wilson_95_low": _frac_str(res.wilson_95_low),
            "wilson_95_high": _frac_str(res.wilson_95_high),
            "target": _frac_str(res.target),
            "slack": _frac_str(res.slack),
            "verdict": res.verdict,
            "note": res.note,
        }
    elif isinstance(res, ExactResult):
        record = {
            "kind": "exact",
            "name": res.name,
            "p": res.p,
            "value": _frac_str(res.value),
            "target": _frac_str(res.target),
            "verdict": res.verdict,
            "note": res.note,
        }
    else:
        raise TypeError(f"cannot serialize {type(res).__name__}")
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def render_table(results) -> str:
    header = ("name", "p", "trials", "point", "wilson 95%", "target", "verdict")
    rows = [header]
    for res in results:
        if isinstance(res, Estimate):
            rows.append(
                (
                    res.name,
                    str(res.p),
                    str(res.trials),
                    f"{float(res.point):.6g}",
                    f"[{float(res.wilson_95_low):.6g}, {float(res.wilson_95_high):.6g}]",
                    f"{float(res.target):.6g}",
                    res.verdict,
                )
            )
        else:
            rows.append(
                (
                    res.name,
                    str(res.p),
                    "exhaustive",
                    f"{float(res.value):.6g}",
                    "-",
                    f"{float(res.target):.6g}",
                    res.verdict,
                )
            )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(header))))
    return "\n".join(lines)

"""The two-party scheme: keygen, sign, verify, and the three demonstrations
that motivate it (designated-verifier simulation, hidden-parameter extraction,
and deterministic forgery against a weakened public-receipt verifier).

A signature is five field elements:

    sigma1 = b * (K' - r)
    sigma2 = d / b
    sigma3 = K1' * d
    sigma4 = d * eps^-1 * eps1
    sigma5 = d * (K0' - r * eps^-1 * eps0)

where (K0', K1') share the per-message key K' with slope a_K, (eps0, eps1)
share eps = alpha * beta with slope a_eps, and r = H(M, n) is the receipt
derived from the pair key.  The verifier recombines

    V0 = sigma1*sigma2 - sigma5
    V1 = sigma1*sigma2 - sigma3 + r*sigma4

and accepts iff sigma4 != 0 and the share reconstruction of (V0, V1) is zero.
An honest tape gives (V0, V1) = (d*C*w0, d*C*w1) for C = -a_K + r*a_eps/eps,
which reconstructs to f(0) = 0; a signer unlucky enough to draw sigma4 = 0
(probability 1/p) is rejected, and signing does not resample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DegenerateExtraction, LengthMismatch, MalformedSignature
from .hashing import (
    DOMAIN_ICVAL,
    DOMAIN_MSGKEY,
    DOMAIN_NONCE,
    DOMAIN_RECEIPT,
    HashCtx,
    PairKey,
    derive_message_key,
    derive_receipt,
    hash_to_field,
)
from .sss import SharePair, Weights, reconstruct, share_with_slope

HINT_KINDS = ("d", "s", "a")


@dataclass(frozen=True)
class Params:
    """Public context: the field and the per-key-pair interpolation weights."""

    prime: object
    weights: Weights

    @classmethod
    def generate(cls, prime, rng) -> "Params":
        return cls(prime, Weights.generate(prime, rng))

    def contexts(self) -> dict:
        return {
            "nonce": HashCtx(DOMAIN_NONCE, self.prime),
            "receipt": HashCtx(DOMAIN_RECEIPT, self.prime),
            "msgkey": HashCtx(DOMAIN_MSGKEY, self.prime),
            "icval": HashCtx(DOMAIN_ICVAL, self.prime),
        }


@dataclass(frozen=True)
class KeyMaterial:
    """Signer secrets plus the public weights.

    k_sig is shared with exactly one designated verifier; whoever holds it can
    verify and can simulate (see dv_forge), which is the point of the scheme.
    """

    sk_K: object
    pk: Weights
    k_sig: PairKey


@dataclass(frozen=True)
class Signature:
    """The 5-tuple (sigma1..sigma5); wire format is the concatenation of the
    fixed-width big-endian elements."""

    s1: object
    s2: object
    s3: object
    s4: object
    s5: object

    def __iter__(self):
        return iter((self.s1, self.s2, self.s3, self.s4, self.s5))

    def encode(self) -> bytes:
        return b"".join(s.to_bytes() for s in self)

    def hex(self) -> str:
        return self.encode().hex()

    @classmethod
    def decode(cls, prime, data: bytes) -> "Signature":
        width = prime.byte_length
        if len(data) != 5 * width:
            raise MalformedSignature(
                f"signature must be {5 * width} bytes, got {len(data)}"
            )
        try:
            parts = [
                prime.from_bytes(data[i * width : (i + 1) * width]) for i in range(5)
            ]
        except (LengthMismatch, ValueError) as exc:
            raise MalformedSignature(str(exc)) from exc
        return cls(*parts)


@dataclass(frozen=True)
class SigningTape:
    """Every ephemeral the signer drew; kept only by tests and extraction
    oracles, never serialized."""

    alpha: object
    beta: object
    b: object
    d: object
    eps: object
    slope_eps: object
    Kprime: object
    slope_K: object
    n: object
    r: object


def keygen(params: Params, rng) -> KeyMaterial:
    """Long-term key K in F_p*, fresh pair key, weights from params."""
    sk_K = params.prime.sample_unit(rng)
    k_sig = PairKey.generate(rng)
    return KeyMaterial(sk_K=sk_K, pk=params.weights, k_sig=k_sig)


def _assemble(weights: Weights, Kprime, r, b, d, eps, slope_eps, slope_K):
    """The signature equations, shared by sign and dv_forge."""
    eps_pair = share_with_slope(eps, slope_eps, weights)
    key_pair = share_with_slope(Kprime, slope_K, weights)
    eps_inv = eps.inv()
    u0 = eps_inv * eps_pair.s0
    u1 = eps_inv * eps_pair.s1
    return Signature(
        s1=b * (Kprime - r),
        s2=d * b.inv(),
        s3=key_pair.s1 * d,
        s4=d * u1,
        s5=d * (key_pair.s0 - r * u0),
    )


def sign(keys: KeyMaterial, message: bytes, rng):
    """Sign a message; returns (Signature, SigningTape).

    sigma4 = 0 is a legal (rejected-by-verify) output; see sign_accepted for
    the retry wrapper.
    """
    prime = keys.sk_K.prime
    n, r = derive_receipt(keys.k_sig, message, prime)
    alpha = prime.sample_unit(rng)
    beta = prime.sample_unit(rng)
    b = prime.sample_unit(rng)
    d = prime.sample_unit(rng)
    eps = alpha * beta
    slope_eps = prime.sample(rng)
    Kprime = derive_message_key(keys.sk_K, message)
    slope_K = prime.sample(rng)
    sig = _assemble(keys.pk, Kprime, r, b, d, eps, slope_eps, slope_K)
    tape = SigningTape(
        alpha=alpha,
        beta=beta,
        b=b,
        d=d,
        eps=eps,
        slope_eps=slope_eps,
        Kprime=Kprime,
        slope_K=slope_K,
        n=n,
        r=r,
    )
    return sig, tape


def sign_accepted(keys: KeyMaterial, message: bytes, rng, max_tries: int = 64):
    """Retry wrapper (off the default path): re-draws until sigma4 != 0."""
    for _ in range(max_tries):
        sig, tape = sign(keys, message, rng)
        if sig.s4:
            return sig, tape
    raise RuntimeError(f"no accepting signature in {max_tries} tries")


def _core_verify(weights: Weights, r, sig: Signature) -> bool:
    if not sig.s4:
        return False
    m = sig.s1 * sig.s2
    v0 = m - sig.s5
    v1 = m - sig.s3 + r * sig.s4
    return not reconstruct(SharePair(v0, v1), weights)


def _as_signature(prime, sig: Union[Signature, bytes]) -> Signature:
    if isinstance(sig, (bytes, bytearray)):
        return Signature.decode(prime, bytes(sig))
    return sig


def verify(pk: Weights, k_sig: PairKey, message: bytes, sig) -> bool:
    """Designated-verifier check: recomputes r from the pair key."""
    prime = pk.prime
    sig = _as_signature(prime, sig)
    _, r = derive_receipt(k_sig, message, prime)
    return _core_verify(pk, r, sig)


def verify_with_receipt(pk: Weights, r, message: bytes, sig) -> bool:
    """Third-party check against a published receipt r."""
    sig = _as_signature(pk.prime, sig)
    return _core_verify(pk, r, sig)


def dv_forge(k_sig: PairKey, pk: Weights, message: bytes, rng) -> Signature:
    """Simulate a signature using only the pair key.

    Draws a uniform stand-in per-message key (the honest one is a PRF output
    the simulator cannot compute) plus fresh nuisance values, then solves the
    same equations; the result verifies whenever its sigma4 != 0.
    """
    prime = pk.prime
    _, r = derive_receipt(k_sig, message, prime)
    Kprime_star = prime.sample(rng)
    slope_K = prime.sample(rng)
    slope_eps = prime.sample(rng)
    d = prime.sample_unit(rng)
    eps = prime.sample_unit(rng)
    b = prime.sample_unit(rng)
    return _assemble(pk, Kprime_star, r, b, d, eps, slope_eps, slope_K)


@dataclass(frozen=True)
class ExtractedParams:
    """One member of the extraction family: the signer ephemerals consistent
    with an observed signature at line parameter d."""

    d: object
    s: object
    a: object
    u0: object
    u1: object
    share0: object
    share1: object


class ExtractedFamily:
    """All signer parameters consistent with one observed signature.

    The observables pin (s, a, u0, u1) only up to the choice of d: for each
    nonzero d there is exactly one consistent tuple, computed by member().
    A hint (the true d, s, or a) selects the signer's actual tuple, available
    as .pinned.
    """

    __slots__ = ("ratio", "pinned", "_m", "_sig", "_r", "_weights")

    def __init__(self, ratio, pinned, m, sig, r, weights):
        self.ratio = ratio
        self.pinned = pinned
        self._m = m
        self._sig = sig
        self._r = r
        self._weights = weights

    def member(self, d) -> ExtractedParams:
        if not d:
            raise DegenerateExtraction("family parameter d must be nonzero")
        d_inv = d.inv()
        s = self._m * d_inv + self._r
        a = (self._sig.s3 * d_inv - s) / self._weights.w1
        u1 = self._sig.s4 * d_inv
        u0 = (a * self._weights.w0 + s - self._sig.s5 * d_inv) / self._r
        return ExtractedParams(
            d=d,
            s=s,
            a=a,
            u0=u0,
            u1=u1,
            share0=s + a * self._weights.w0,
            share1=s + a * self._weights.w1,
        )


def extract_params(
    k_sig: PairKey, message: bytes, sig: Signature, hint, pk: Weights
) -> ExtractedFamily:
    """Recover signer parameters from a signature, pinned by a hint.

    hint is a pair (kind, element) with kind in {"d", "s", "a"}: the signer's
    true line parameter, per-message key, or key slope.  The returned family
    also exposes every other consistent member via member(d).
    """
    kind, value = hint
    if kind not in HINT_KINDS:
        raise ValueError(f"hint kind must be one of {HINT_KINDS}, got {kind!r}")
    prime = pk.prime
    sig = _as_signature(prime, sig)
    _, r = derive_receipt(k_sig, message, prime)
    if not sig.s3:
        raise DegenerateExtraction("sigma3 = 0: ratio undefined")
    if not r:
        raise DegenerateExtraction("r = 0: u0 is unconstrained")
    m = sig.s1 * sig.s2
    ratio = m / sig.s3
    one = prime.one
    if ratio == one:
        raise DegenerateExtraction("R = 1: the ratio equation degenerates")

    if kind == "d":
        if not value:
            raise DegenerateExtraction("hint d must be nonzero")
        d = value
    elif kind == "a":
        # s(R-1) + a*w1*R + r = 0 solved for s, then d from sigma3 = d*(s + a*w1).
        s = -(value * pk.w1 * ratio + r) / (ratio - one)
        denom = s + value * pk.w1
        if not denom:
            raise DegenerateExtraction("hint a implies a zero share; d undefined")
        d = sig.s3 / denom
    else:
        # sigma1*sigma2 = d*(s - r): needs s != r, i.e. R != 0.
        if not ratio:
            raise DegenerateExtraction("R = 0: every member has s = r; hint s cannot pin d")
        if value == r:
            raise DegenerateExtraction("hint s equals r but R != 0: inconsistent hint")
        d = m / (value - r)

    family = ExtractedFamily(ratio, None, m, sig, r, pk)
    family.pinned = family.member(d)
    return family


def public_receipt(message: bytes, prime):
    """The weakened receipt r' = H(M) with no nonce: publicly computable."""
    payload = len(message).to_bytes(8, "big") + message
    return hash_to_field(HashCtx(DOMAIN_RECEIPT, prime), payload)


def verify_public_r(pk: Weights, message: bytes, sig) -> bool:
    """Deliberately weakened verifier that derives r from the message alone."""
    sig = _as_signature(pk.prime, sig)
    return _core_verify(pk, public_receipt(message, pk.prime), sig)


def public_r_forge(pk: Weights, message: bytes, rng) -> Signature:
    """Deterministic forgery against verify_public_r.

    With r' public, pick sigma1..sigma4 freely and solve the acceptance
    identity for sigma5: sigma5 = sigma1*sigma2 - (w0/w1) * V1.  The real
    verifier still rejects these (its r is hidden behind the nonce PRF).
    """
    prime = pk.prime
    r_pub = public_receipt(message, prime)
    s1 = prime.sample(rng)
    s2 = prime.sample(rng)
    s3 = prime.sample(rng)
    s4 = prime.sample(rng)
    m = s1 * s2
    v1 = m - s3 + r_pub * s4
    s5 = m - (pk.w0 / pk.w1) * v1
    return Signature(s1, s2, s3, s4, s5)

"""Hash-to-field and PRF-to-field derivations.

Four fixed domain tags separate the four derivations this package performs:

    SLM/v1/nonce    n  = PRF(k_sig, M)          per-message nonce
    SLM/v1/receipt  r  = H(M, n)                the receipt
    SLM/v1/msgkey   K' = PRF(K, M)              per-message key
    SLM/v1/icval    x  = H(M, sig)              three-party authenticated value

Every hash/HMAC input is framed as tag || 8-byte big-endian payload length ||
payload, so no two derivations can collide on input bytes, and multi-part
payloads are composed injectively before framing.  Outputs are SHA-512 (or
HMAC-SHA-512) digests reduced wide, making modular bias negligible for any
modulus up to 256 bits.
"""

from __future__ import annotations

import hashlib
import hmac
from dataclasses import dataclass

from .rng import Rng

DOMAIN_NONCE = b"SLM/v1/nonce"
DOMAIN_RECEIPT = b"SLM/v1/receipt"
DOMAIN_MSGKEY = b"SLM/v1/msgkey"
DOMAIN_ICVAL = b"SLM/v1/icval"

PAIR_KEY_BYTES = 32


@dataclass(frozen=True)
class HashCtx:
    """A derivation context: domain tag plus target field."""

    domain_tag: bytes
    prime: object

    def frame(self, payload: bytes) -> bytes:
        return self.domain_tag + len(payload).to_bytes(8, "big") + payload


@dataclass(frozen=True)
class PairKey:
    """The 32-byte signer/designated-verifier shared key k_sig."""

    data: bytes

    def __post_init__(self):
        if len(self.data) != PAIR_KEY_BYTES:
            raise ValueError(f"pair key must be {PAIR_KEY_BYTES} bytes")

    @classmethod
    def generate(cls, rng: Rng) -> "PairKey":
        return cls(rng.take(PAIR_KEY_BYTES))

    def hex(self) -> str:
        return self.data.hex()


def hash_to_field(ctx: HashCtx, payload: bytes):
    """Unkeyed hash into F_p."""
    return ctx.prime.reduce_wide(hashlib.sha512(ctx.frame(payload)).digest())


def prf_to_field(key, payload: bytes, ctx: HashCtx):
    """Keyed (HMAC) hash into F_p; key is a PairKey or raw bytes."""
    key_bytes = key.data if isinstance(key, PairKey) else key
    return ctx.prime.reduce_wide(hmac.digest(key_bytes, ctx.frame(payload), "sha512"))


def _message_and_element(message: bytes, element) -> bytes:
    # Injective pairing: length-prefixed message, then a fixed-width element.
    return len(message).to_bytes(8, "big") + message + element.to_bytes()


def derive_nonce(k_sig: PairKey, message: bytes, prime):
    return prf_to_field(k_sig, message, HashCtx(DOMAIN_NONCE, prime))


def receipt_from_nonce(message: bytes, nonce):
    """r = H(M, n); anyone holding the nonce can recompute the receipt."""
    prime = nonce.prime
    return hash_to_field(
        HashCtx(DOMAIN_RECEIPT, prime), _message_and_element(message, nonce)
    )


def derive_receipt(k_sig: PairKey, message: bytes, prime):
    """Nonce and receipt for one message: n = PRF(k_sig, M), r = H(M, n)."""
    nonce = derive_nonce(k_sig, message, prime)
    return nonce, receipt_from_nonce(message, nonce)


def derive_message_key(long_term_key, message: bytes):
    """K' = PRF(K, M); the long-term field element keys the PRF via its encoding."""
    prime = long_term_key.prime
    return prf_to_field(
        long_term_key.to_bytes(), message, HashCtx(DOMAIN_MSGKEY, prime)
    )


def authenticated_value(message: bytes, sig_bytes: bytes, prime):
    """x = H(M, sig): the value the three-party layer authenticates."""
    payload = len(message).to_bytes(8, "big") + message + sig_bytes
    return hash_to_field(HashCtx(DOMAIN_ICVAL, prime), payload)

"""Three-party protocol: a signer P1 authenticates a value to a holder P2 so
that P2 can later transfer it to a verifier P3.

Signing phase: P1 signs the message, hashes (M, sig) to the authenticated
value x, and installs an affine line: P2 gets the points (x, sigma) and
(x', sigma'), P3 gets the line keys (k1, k2, k2') with sigma = k1*x + k2 and
sigma' = k1*x' + k2'.  P2 broadcasts a random linear combination as a
challenge; P1 and P3 each check it against what they hold, P1 audits P3's
declaration, and one of four resolution arms runs:

    A: P1 declares "P2 corrupt", reveals (x, sigma); P2 adopts it, P3 re-keys.
    B: everyone accepts; nothing to fix.
    C: P3 rejected and the audit agrees the line is bad; P1 reveals (x, sigma)
       and P3 re-keys k2 := sigma - k1*x.
    D: P3's declaration contradicts what the keys imply; P1 declares
       "P3 corrupt", reveals (k1, k2); P2 re-derives sigma, P3 adopts the keys.

Every arm ends the signing phase with z2 = x (never bottom).  Transfer phase:
P2 sends its current (x, sigma) to P3, who outputs z3 = x iff
sigma = k1*x + k2 and bottom otherwise.

The payload (M, sig, n) rides along P1 -> P2 -> P3 so the transferred value
can be interpreted: interpret_value accepts x iff H(M, sig) = x and the
two-party predicate verifies under the receipt derived from n (or from k_sig).

Fixed round schedule: 1 setup, 2 challenge, 3 P1's challenge check, 4 P3's
check, 5 P1's audit, 6 resolution reveals, 7 transfer.  Honest parties fall
back to zero-valued defaults when a (corrupt) counterparty starves them of
state, keeping every session total; the MissingSetup errors are raised only
when the per-step methods are driven directly out of order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import MissingNonce, MissingSetup, PhaseViolation
from .hashing import PairKey, authenticated_value, derive_receipt, receipt_from_nonce
from .net_sim import AdversaryHook, Envelope, NetResult, Role, run_session
from .rng import Rng
from .sss import Weights
from .two_party import KeyMaterial, Signature, _core_verify, sign

ROUND_SETUP = 1
ROUND_CHALLENGE = 2
ROUND_P1_CHECK = 3
ROUND_P3_CHECK = 4
ROUND_AUDIT = 5
ROUND_RESOLUTION = 6
ROUND_TRANSFER = 7
TOTAL_ROUNDS = 7


def _wire_parts(*parts) -> bytes:
    out = bytearray()
    for part in parts:
        if part is None:
            out += b"\x00"
        elif isinstance(part, bool):
            out += b"\x01" + bytes([part])
        elif isinstance(part, (bytes, bytearray)):
            out += b"\x02" + len(part).to_bytes(8, "big") + bytes(part)
        else:  # field element
            out += b"\x03" + part.to_bytes()
    return bytes(out)


@dataclass(frozen=True)
class HolderSetup:
    """P1 -> P2: the line points plus the interpretation payload."""

    x: object
    x_prime: object
    sigma: object
    sigma_prime: object
    message: bytes
    sig_alg: Signature
    nonce: object

    def to_wire(self) -> bytes:
        return _wire_parts(
            b"\x10", self.x, self.x_prime, self.sigma, self.sigma_prime,
            self.message, self.sig_alg.encode(), self.nonce,
        )


@dataclass(frozen=True)
class VerifierSetup:
    """P1 -> P3: the affine line keys."""

    k1: object
    k2: object
    k2_prime: object

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x11", self.k1, self.k2, self.k2_prime)


@dataclass(frozen=True)
class Challenge:
    """P2's broadcast: a random linear combination of its two points."""

    e: object
    x_e: object
    sigma_e: object

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x12", self.e, self.x_e, self.sigma_e)


@dataclass(frozen=True)
class ChallengeVerdict:
    """P1's broadcast check of the challenge; carries the reveal on failure."""

    ok: bool
    reveal_x: object = None
    reveal_sigma: object = None

    def verdict_label(self) -> str:
        return "accept" if self.ok else "P2 corrupt"

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x13", self.ok, self.reveal_x, self.reveal_sigma)


@dataclass(frozen=True)
class LineVerdict:
    """P3's broadcast check of the challenge against its keys."""

    ok: bool

    def verdict_label(self) -> str:
        return "accept" if self.ok else "reject"

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x14", self.ok)


@dataclass(frozen=True)
class AuditVerdict:
    """P1's broadcast audit of P3's declaration."""

    ok: bool

    def verdict_label(self) -> str:
        return "accept" if self.ok else "P3 corrupt"

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x15", self.ok)


@dataclass(frozen=True)
class RevealPoint:
    """Resolution arm C: P1 publishes the authoritative point."""

    x: object
    sigma: object

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x16", self.x, self.sigma)


@dataclass(frozen=True)
class RevealLine:
    """Resolution arm D: P1 publishes the line keys."""

    k1: object
    k2: object

    def to_wire(self) -> bytes:
        return _wire_parts(b"\x17", self.k1, self.k2)


@dataclass(frozen=True)
class TransferValue:
    """P2 -> P3: the held point plus the interpretation payload."""

    x: object
    sigma: object
    message: bytes
    sig_alg: Optional[Signature]
    nonce: object

    def to_wire(self) -> bytes:
        return _wire_parts(
            b"\x18", self.x, self.sigma, self.message,
            self.sig_alg.encode() if self.sig_alg is not None else None,
            self.nonce,
        )


@dataclass(frozen=True)
class IcSetup:
    """P1's complete setup record (both parties' packages)."""

    x: object
    x_prime: object
    sigma: object
    sigma_prime: object
    k1: object
    k2: object
    k2_prime: object


@dataclass
class SessionOutcome:
    """z2 (holder), z3 (verifier, None = bottom), and the broadcast verdicts
    as (round, sender, declaration) triples."""

    z2: object
    z3: object
    verdicts: list


def p1_start(keys: KeyMaterial, message: bytes, rng, ic_coins=None):
    """Sign, derive x, and build both setup packages.

    Returns (IcSetup, sig_alg, x, envelopes).  ic_coins, when given, forces
    (k1, k2, x_prime, k2_prime) instead of drawing them from rng.
    """
    prime = keys.sk_K.prime
    sig_alg, tape = sign(keys, message, rng)
    x = authenticated_value(message, sig_alg.encode(), prime)
    if ic_coins is None:
        k1 = prime.sample(rng)
        k2 = prime.sample(rng)
        x_prime = prime.sample(rng)
        k2_prime = prime.sample(rng)
    else:
        k1, k2, x_prime, k2_prime = ic_coins
    sigma = k1 * x + k2
    sigma_prime = k1 * x_prime + k2_prime
    setup = IcSetup(x, x_prime, sigma, sigma_prime, k1, k2, k2_prime)
    envelopes = [
        Envelope(
            ROUND_SETUP, Role.P1, Role.P2,
            HolderSetup(x, x_prime, sigma, sigma_prime, message, sig_alg, tape.n),
        ),
        Envelope(ROUND_SETUP, Role.P1, Role.P3, VerifierSetup(k1, k2, k2_prime)),
    ]
    return setup, sig_alg, x, envelopes


class P1Signer:
    """The signer's state machine; emits in rounds 1, 3, 5, 6."""

    emit_rounds = frozenset({ROUND_SETUP, ROUND_P1_CHECK, ROUND_AUDIT, ROUND_RESOLUTION})
    role = Role.P1

    def __init__(self, keys: KeyMaterial, message: bytes, tape: Rng, ic_coins=None):
        self.keys = keys
        self.message = message
        self.tape_seed = tape.seed
        self._rng = tape
        self._ic_coins = ic_coins
        self.setup: Optional[IcSetup] = None
        self.sig_alg: Optional[Signature] = None
        self.x = None
        self.nonce = None
        self.challenge: Optional[Challenge] = None
        self.p3_verdict: Optional[LineVerdict] = None
        self.arm: Optional[str] = None

    def describe_inputs(self) -> dict:
        return {"message": self.message.hex(), "role": "signer"}

    def start(self) -> list:
        setup, sig_alg, x, envelopes = p1_start(
            self.keys, self.message, self._rng, self._ic_coins
        )
        self.setup = setup
        self.sig_alg = sig_alg
        self.x = x
        self.nonce = envelopes[0].payload.nonce
        return envelopes

    def check_challenge(self, ch: Optional[Challenge]) -> ChallengeVerdict:
        """Round 3: compare the broadcast combination against the real line.

        A missing challenge counts as a deviation (silence is not honest
        behavior in a synchronous protocol)."""
        if self.setup is None:
            raise MissingSetup("P1 has not run setup")
        s = self.setup
        ok = (
            ch is not None
            and ch.x_e == s.x_prime + ch.e * s.x
            and ch.sigma_e == s.sigma_prime + ch.e * s.sigma
        )
        if ok:
            return ChallengeVerdict(True)
        return ChallengeVerdict(False, reveal_x=s.x, reveal_sigma=s.sigma)

    def challenge_truth(self, ch: Challenge) -> bool:
        """What P3's keys actually imply about the challenge."""
        s = self.setup
        return ch.sigma_e == s.k1 * ch.x_e + s.k2_prime + ch.e * s.k2

    def audit(self, p3_verdict: Optional[LineVerdict]) -> AuditVerdict:
        """Round 5: is P3's declaration consistent with the keys P1 dealt?"""
        if self.setup is None:
            raise MissingSetup("P1 has not run setup")
        if self.challenge is None or p3_verdict is None:
            # No basis to audit: a silent P3 is inconsistent by definition.
            return AuditVerdict(False)
        return AuditVerdict(p3_verdict.ok == self.challenge_truth(self.challenge))

    def emit(self, rnd: int) -> list:
        if rnd == ROUND_SETUP:
            return self.start()
        if rnd == ROUND_P1_CHECK:
            verdict = self.check_challenge(self.challenge)
            if not verdict.ok:
                self.arm = "A"
            return [Envelope(rnd, Role.P1, None, verdict)]
        if rnd == ROUND_AUDIT:
            if self.arm == "A":
                return []
            verdict = self.audit(self.p3_verdict)
            if not verdict.ok:
                self.arm = "D"
            return [Envelope(rnd, Role.P1, None, verdict)]
        if rnd == ROUND_RESOLUTION:
            if self.arm == "A":
                return []
            s = self.setup
            if self.arm == "D":
                return [Envelope(rnd, Role.P1, None, RevealLine(s.k1, s.k2))]
            if self.p3_verdict is not None and not self.p3_verdict.ok:
                self.arm = "C"
                return [Envelope(rnd, Role.P1, None, RevealPoint(s.x, s.sigma))]
            self.arm = "B"
            return []
        return []

    def deliver(self, env: Envelope) -> None:
        # First message of each kind wins; a corrupt counterparty repeating a
        # broadcast with new contents must not move state twice.
        payload = env.payload
        if isinstance(payload, Challenge):
            if self.challenge is None:
                self.challenge = payload
        elif isinstance(payload, LineVerdict):
            if self.p3_verdict is None:
                self.p3_verdict = payload

    def finalize(self) -> dict:
        return {
            "arm": self.arm,
            "x": self.x,
            "sig_alg": self.sig_alg,
            "nonce": self.nonce,
            "setup": self.setup,
        }


class P2Holder:
    """The holder's state machine; emits in rounds 2 and 7."""

    emit_rounds = frozenset({ROUND_CHALLENGE, ROUND_TRANSFER})
    role = Role.P2

    def __init__(self, prime, tape: Rng, challenge_coin=None):
        self.prime = prime
        self.tape_seed = tape.seed
        self._rng = tape
        self._coin = challenge_coin
        self.setup: Optional[HolderSetup] = None
        self.cur_x = None
        self.cur_sigma = None
        self.z2 = None
        self._resolved = False

    def describe_inputs(self) -> dict:
        return {"role": "holder"}

    def challenge(self) -> Challenge:
        """Round 2: broadcast a random combination of the two held points."""
        if self.setup is None:
            raise MissingSetup("P2 holds no setup package")
        e = self._coin if self._coin is not None else self.prime.sample(self._rng)
        return Challenge(
            e=e,
            x_e=self.setup.x_prime + e * self.setup.x,
            sigma_e=self.setup.sigma_prime + e * self.setup.sigma,
        )

    def _resolve(self) -> None:
        if not self._resolved:
            self._resolved = True
            if self.z2 is not None:
                raise PhaseViolation("z2 already set")
            self.z2 = self.cur_x

    def transfer(self) -> TransferValue:
        """Round 7: hand the current point (and payload) to the verifier."""
        if not self._resolved:
            raise PhaseViolation("transfer before the signing phase resolved")
        s = self.setup
        return TransferValue(
            x=self.cur_x,
            sigma=self.cur_sigma,
            message=s.message if s else b"",
            sig_alg=s.sig_alg if s else None,
            nonce=s.nonce if s else None,
        )

    def emit(self, rnd: int) -> list:
        if rnd == ROUND_CHALLENGE:
            if self.setup is None:
                # Starved by a corrupt signer: challenge over zeros keeps the
                # session total; every check downstream will fail closed.
                zero = self.prime.zero
                return [Envelope(rnd, Role.P2, None, Challenge(zero, zero, zero))]
            return [Envelope(rnd, Role.P2, None, self.challenge())]
        if rnd == ROUND_TRANSFER:
            if not self._resolved:
                self._resolve()
            return [Envelope(rnd, Role.P2, Role.P3, self.transfer())]
        return []

    def deliver(self, env: Envelope) -> None:
        # First setup wins; once the signing phase is resolved (arm A), later
        # reveals cannot move the authoritative point away from z2.
        payload = env.payload
        if isinstance(payload, HolderSetup):
            if self.setup is None:
                self.setup = payload
                self.cur_x = payload.x
                self.cur_sigma = payload.sigma
        elif isinstance(payload, ChallengeVerdict):
            if not payload.ok and not self._resolved:
                # Arm A: the revealed point is authoritative.
                self.cur_x = payload.reveal_x
                self.cur_sigma = payload.reveal_sigma
                self._resolve()
        elif isinstance(payload, RevealPoint):
            if not self._resolved:
                self.cur_x = payload.x
                self.cur_sigma = payload.sigma
        elif isinstance(payload, RevealLine):
            if not self._resolved:
                if self.cur_x is None:
                    self.cur_x = self.prime.zero
                self.cur_sigma = payload.k1 * self.cur_x + payload.k2

    def finalize(self) -> dict:
        return {"z2": self.z2}


class P3Verifier:
    """The verifier's state machine; emits in round 4."""

    emit_rounds = frozenset({ROUND_P3_CHECK})
    role = Role.P3

    def __init__(self, prime, tape: Rng):
        self.prime = prime
        self.tape_seed = tape.seed
        self._rng = tape
        self.k1 = None
        self.k2 = None
        self.k2_prime = None
        self.challenge: Optional[Challenge] = None
        self.z3 = None
        self._z3_set = False
        self._arm_a = False
        self.transfer_payload: Optional[TransferValue] = None

    def describe_inputs(self) -> dict:
        return {"role": "verifier"}

    @property
    def has_keys(self) -> bool:
        return self.k1 is not None

    def check_challenge(self, ch: Optional[Challenge]) -> LineVerdict:
        """Round 4: does the broadcast combination lie on the keyed line?"""
        if not self.has_keys:
            raise MissingSetup("P3 holds no line keys")
        if ch is None:
            return LineVerdict(False)
        return LineVerdict(
            ch.sigma_e == self.k1 * ch.x_e + self.k2_prime + ch.e * self.k2
        )

    def extract_transfer(self, x, sigma):
        """Transfer phase: output x iff the point lies on the line."""
        if self._z3_set:
            raise PhaseViolation("z3 already set")
        self._z3_set = True
        if self.has_keys and sigma == self.k1 * x + self.k2:
            self.z3 = x
        else:
            self.z3 = None
        return self.z3

    def emit(self, rnd: int) -> list:
        if rnd == ROUND_P3_CHECK:
            if self._arm_a:
                return []
            if not self.has_keys:
                # Starved by a corrupt signer: fail closed.
                return [Envelope(rnd, Role.P3, None, LineVerdict(False))]
            return [Envelope(rnd, Role.P3, None, self.check_challenge(self.challenge))]
        return []

    def deliver(self, env: Envelope) -> None:
        # Mirrors P2's rules: first setup/challenge/transfer wins, and once
        # arm A resolved the signing phase, later reveals are dead letters.
        payload = env.payload
        if isinstance(payload, VerifierSetup):
            if not self.has_keys:
                self.k1 = payload.k1
                self.k2 = payload.k2
                self.k2_prime = payload.k2_prime
        elif isinstance(payload, Challenge):
            if self.challenge is None:
                self.challenge = payload
        elif isinstance(payload, ChallengeVerdict):
            if not payload.ok and not self._arm_a:
                self._arm_a = True
                k1 = self.k1 if self.has_keys else self.prime.zero
                self.k2 = payload.reveal_sigma - k1 * payload.reveal_x
                if not self.has_keys:
                    self.k1 = k1
        elif isinstance(payload, RevealPoint):
            if not self._arm_a:
                k1 = self.k1 if self.has_keys else self.prime.zero
                self.k2 = payload.sigma - k1 * payload.x
                if not self.has_keys:
                    self.k1 = k1
        elif isinstance(payload, RevealLine):
            if not self._arm_a:
                self.k1 = payload.k1
                self.k2 = payload.k2
        elif isinstance(payload, TransferValue):
            if not self._z3_set:
                self.transfer_payload = payload
                self.extract_transfer(payload.x, payload.sigma)

    def finalize(self) -> dict:
        return {"z3": self.z3, "transfer": self.transfer_payload}


def interpret_value(
    pk: Weights, message: bytes, sig_alg: Signature, x, *, nonce=None, k_sig=None
) -> bool:
    """Accept x iff it hashes from (M, sig) and the signature verifies.

    The receipt comes from the nonce when given, else from k_sig (the
    designated-verifier path); with neither there is nothing to check against.
    """
    prime = pk.prime
    if nonce is not None:
        r = receipt_from_nonce(message, nonce)
    elif k_sig is not None:
        _, r = derive_receipt(k_sig, message, prime)
    else:
        raise MissingNonce("need the nonce or the pair key to derive the receipt")
    if authenticated_value(message, sig_alg.encode(), prime) != x:
        return False
    return _core_verify(pk, r, sig_alg)


@dataclass
class IcSessionResult:
    """One full session: protocol outcome plus the signer-side ground truth."""

    outcome: SessionOutcome
    x: object
    sig_alg: Optional[Signature]
    nonce: object
    arm: Optional[str]
    accepted: Optional[bool]
    net: NetResult


def run_signing_session(
    keys: KeyMaterial,
    message: bytes,
    seed: bytes,
    *,
    adversary: Optional[AdversaryHook] = None,
    rushing: bool = True,
    collect: bool = False,
    interpret: bool = False,
    ic_coins=None,
    challenge_coin=None,
) -> IcSessionResult:
    """Construct the three parties from a root seed and run all seven rounds."""
    prime = keys.sk_K.prime
    root = Rng(seed)
    parties = {
        Role.P1: P1Signer(keys, message, root.fork(b"tape/P1"), ic_coins=ic_coins),
        Role.P2: P2Holder(prime, root.fork(b"tape/P2"), challenge_coin=challenge_coin),
        Role.P3: P3Verifier(prime, root.fork(b"tape/P3")),
    }
    net = run_session(
        parties, adversary, total_rounds=TOTAL_ROUNDS, rushing=rushing, collect=collect
    )
    p1_out = net.outputs[Role.P1]
    verdicts = []
    for env in net.broadcasts:
        label = getattr(env.payload, "verdict_label", None)
        if label is not None:
            verdicts.append((env.round, env.sender.value, label()))
    outcome = SessionOutcome(
        z2=net.outputs[Role.P2]["z2"], z3=net.outputs[Role.P3]["z3"], verdicts=verdicts
    )
    accepted = None
    if interpret:
        transfer = net.outputs[Role.P3]["transfer"]
        accepted = False
        if (
            outcome.z3 is not None
            and transfer is not None
            and transfer.sig_alg is not None
            and transfer.nonce is not None
        ):
            accepted = interpret_value(
                keys.pk, transfer.message, transfer.sig_alg, outcome.z3,
                nonce=transfer.nonce,
            )
    return IcSessionResult(
        outcome=outcome,
        x=p1_out["x"],
        sig_alg=p1_out["sig_alg"],
        nonce=p1_out["nonce"],
        arm=p1_out["arm"],
        accepted=accepted,
        net=net,
    )

"""The MOR public-key protocol over SL(d,q).

Keys are automorphisms presented on the transvection generators: public
key {phi, phi^m}, private key m.  Encryption picks a fresh r and sends
(phi^r, phi^{mr}(a)); decryption raises phi^r to m and applies the
inverse.

Exponents are sampled uniformly from [2, q^(d^2) - 2]: no proper divisor
of the order of <phi> is known to the key holder without factoring, and
q^(d^2) - 1 bounds the order of any lifted operator.

Large powers of an automorphism are computed through its conjugator:
recover B once, raise B to the exponent by matrix square-and-multiply,
and rebuild the generator images.  Conjugation by B^m equals the m-fold
composition of conjugation by B and the scalar ambiguity of B cancels,
so this is value-identical to compose-based square-and-multiply (the
test suite asserts it) while staying polynomial in log m at full-size
parameters.

Plaintexts ride in a single elementary transvection at the fixed
position (1,2), so the conjugation-invariant trace and determinant leak
nothing: they are always d and 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autos import Automorphism, InvalidAutomorphismError, recover_conjugator
from .field import FieldSpec
from .fqpoly import char_poly, is_irreducible
from .matrix import Matrix, conjugate, mat_inv, mat_pow, random_gl, transvection
from .words import NotInSLError

__all__ = [
    "MorParams",
    "MorPublicKey",
    "MorPrivateKey",
    "MorCiphertext",
    "KeygenFailureError",
    "InvalidCiphertextError",
    "CapacityError",
    "MessageFormatError",
    "keygen",
    "encrypt",
    "decrypt",
    "encode_message",
    "decode_message",
    "message_capacity",
]

FORMAT_VERSION = 1
KEYGEN_RETRY_CAP = 256


class KeygenFailureError(RuntimeError):
    """Keygen exhausted its retry budget without an acceptable conjugator."""


class InvalidCiphertextError(ValueError):
    pass


class CapacityError(ValueError):
    """Message longer than one field element can carry."""


class MessageFormatError(ValueError):
    """Decoded matrix is not a plaintext-bearing transvection."""


@dataclass(frozen=True)
class MorParams:
    spec: FieldSpec
    d: int
    require_irreducible_lift: bool = True

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree must be at least 2")

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "d": self.d,
            "require_irreducible_lift": self.require_irreducible_lift,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MorParams":
        return cls(
            FieldSpec.from_json(obj["spec"]),
            int(obj["d"]),
            bool(obj.get("require_irreducible_lift", True)),
        )


@dataclass(frozen=True)
class MorPublicKey:
    params: MorParams
    phi: Automorphism
    phi_m: Automorphism

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "params": self.params.to_json(),
            "phi": self.phi.to_json(),
            "phi_m": self.phi_m.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MorPublicKey":
        _check_version(obj)
        return cls(
            MorParams.from_json(obj["params"]),
            Automorphism.from_json(obj["phi"]),
            Automorphism.from_json(obj["phi_m"]),
        )


@dataclass(frozen=True)
class MorPrivateKey:
    m: int
    conjugator: Matrix

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "m": str(self.m),
            "conjugator": self.conjugator.to_json(),
        }

    @classmethod
    def from_json(cls, spec: FieldSpec, obj: dict) -> "MorPrivateKey":
        _check_version(obj)
        return cls(int(obj["m"]), Matrix.from_json(spec, obj["conjugator"]))


@dataclass(frozen=True)
class MorCiphertext:
    phi_r: Automorphism
    payload: Matrix

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "phi_r": self.phi_r.to_json(),
            "payload": self.payload.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MorCiphertext":
        _check_version(obj)
        phi_r = Automorphism.from_json(obj["phi_r"])
        return cls(phi_r, Matrix.from_json(phi_r.spec, obj["payload"]))


def _check_version(obj: dict) -> None:
    if obj.get("format_version") != FORMAT_VERSION:
        raise ValueError("unsupported or missing format_version")


# ---------------------------------------------------------------------------
# key generation
# ---------------------------------------------------------------------------


def _exponent_bound(params: MorParams) -> int:
    return params.spec.q ** (params.d * params.d)


def _conj_pow(b: Matrix, e: int, certified: bool | None = None) -> Matrix:
    """b^e, reducing e mod q^d - 1 when that is provably exact.

    A matrix with irreducible characteristic polynomial is semisimple
    with eigenvalues in the degree-d extension, so its order divides
    q^d - 1 and the reduction changes nothing.  Callers that have
    already established irreducibility pass certified=True; otherwise
    the certificate is checked here and a failed check falls back to the
    full exponent (correct, just slower).  This keeps full-size
    exponentiations polynomial in d*gamma bits rather than d^2*gamma.
    """
    if certified is None:
        certified = is_irreducible(char_poly(b))
    if certified:
        e %= b.spec.q**b.d - 1
    return mat_pow(b, e)


def keygen(params: MorParams, rng, retry_cap: int = KEYGEN_RETRY_CAP):
    """Sample a conjugator and secret exponent; returns (public, private).

    With require_irreducible_lift the conjugator must have an irreducible
    characteristic polynomial, which pins the Menezes-Wu target field for
    its powers at the full degree-d extension.  (The lifted operator's
    characteristic polynomial itself always carries the factor x - 1,
    conjugation fixing the identity, so irreducibility is demanded of the
    conjugator's own polynomial.)
    """
    spec, d = params.spec, params.d
    a = None
    for _ in range(retry_cap):
        cand = random_gl(spec, d, rng)
        if params.require_irreducible_lift and not is_irreducible(char_poly(cand)):
            continue
        a = cand
        break
    if a is None:
        raise KeygenFailureError(f"no acceptable conjugator in {retry_cap} draws")
    m = rng.randrange(2, _exponent_bound(params) - 1)
    phi = Automorphism.from_conjugator(a)
    phi_m = Automorphism.from_conjugator(
        _conj_pow(a, m, certified=params.require_irreducible_lift)
    )  # = phi.power(m)
    return MorPublicKey(params, phi, phi_m), MorPrivateKey(m, a)


# ---------------------------------------------------------------------------
# encryption / decryption
# ---------------------------------------------------------------------------


def encrypt(pk: MorPublicKey, a: Matrix, rng) -> MorCiphertext:
    """Fresh-r encryption; the rng argument is mandatory by design."""
    spec, d = pk.params.spec, pk.params.d
    if a.spec != spec or a.d != d:
        raise ValueError("plaintext matrix has wrong spec or degree")
    if not a.is_sl():
        raise NotInSLError("plaintext must have determinant 1")
    r = rng.randrange(2, _exponent_bound(pk.params) - 1)
    b_phi = recover_conjugator(pk.phi)
    b_phim = recover_conjugator(pk.phi_m)
    phi_r = Automorphism.from_conjugator(_conj_pow(b_phi, r))  # = phi.power(r)
    payload = conjugate(a, _conj_pow(b_phim, r))  # = phi_m.power(r).apply(a)
    return MorCiphertext(phi_r, payload)


def decrypt(sk: MorPrivateKey, ct: MorCiphertext, method: str = "conjugator") -> Matrix:
    """Invert phi^{mr} on the payload.

    method="conjugator" recovers B_r from phi^r, raises it to m and
    conjugates back; method="compose" follows power-then-invert on the
    automorphism presentation.  Both agree; the former is the fast path.
    """
    payload = ct.payload
    if sk.conjugator.d != payload.d or sk.conjugator.spec != payload.spec:
        raise InvalidCiphertextError("ciphertext does not match this key")
    if not payload.is_sl():
        raise InvalidCiphertextError("payload determinant is not 1")
    try:
        if method == "conjugator":
            b_r = recover_conjugator(ct.phi_r)
            b = _conj_pow(b_r, sk.m)
            return conjugate(payload, mat_inv(b))
        if method == "compose":
            psi = ct.phi_r.power(sk.m)
            return psi.invert().apply(payload)
    except InvalidAutomorphismError as exc:
        raise InvalidCiphertextError(str(exc)) from exc
    raise ValueError(f"unknown decrypt method {method!r}")


# ---------------------------------------------------------------------------
# plaintext encoding
# ---------------------------------------------------------------------------


def message_capacity(spec: FieldSpec) -> int:
    """Bytes one field element can carry with the leading pad byte.

    Largest k with 2^(8k+1) <= q, so the padded integer always stays
    below q; for p = 2 this is floor((gamma - 1) / 8).
    """
    return max(0, (spec.q.bit_length() - 2) // 8)


def encode_message(data: bytes, params: MorParams) -> Matrix:
    """Inject bytes into the transvection 1 + lam*e_{1,2}.

    A leading 0x01 byte keeps lam nonzero and makes decoding exact.
    """
    cap = message_capacity(params.spec)
    if len(data) > cap:
        raise CapacityError(f"message of {len(data)} bytes exceeds capacity {cap}")
    n = int.from_bytes(b"\x01" + data, "big")
    lam = params.spec.from_val(n)
    return transvection(params.spec, params.d, 1, 2, lam)


def decode_message(m: Matrix) -> bytes:
    spec, d = m.spec, m.d
    one = spec.one()
    lam = None
    for a in range(d):
        for b in range(d):
            x = m.rows[a][b]
            if a == b:
                if x != one:
                    raise MessageFormatError("matrix is not a plaintext transvection")
            elif (a, b) == (0, 1):
                lam = x
            elif x:
                raise MessageFormatError("matrix is not a plaintext transvection")
    if lam is None or lam.is_zero():
        raise MessageFormatError("empty coefficient slot")
    n = lam.val
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if raw[0] != 1:
        raise MessageFormatError("missing pad byte")
    return raw[1:]

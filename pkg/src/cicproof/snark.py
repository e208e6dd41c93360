"""Succinct proofs over quadratic programs: setup, prove, verify, wire formats.

The key generator samples a secret evaluation point and blinding scalars,
publishes per-wire encodings split into a proving key (internal wires plus
powers of the secret point) and a verification key (public-io wires plus a
handful of fixed elements). A proof is always exactly eight group elements;
checking it costs twelve pairings regardless of how big the computation was.

Group arithmetic goes through a pluggable backend (see pairing.py). The
bundled backend is an arithmetic mock, so nothing here is secure against a
party who inspects key material; the object of interest is the protocol
shape and its operation counts, not cryptographic hardness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadMagic,
    BadVersion,
    DegenerateTrapdoor,
    LengthMismatch,
    MalformedProof,
    ModulusMismatch,
    NotDivisible,
    UnsatisfyingWitness,
)
from .pairing import G1, G2, GroupElement, MOCK_BACKEND_ID, MockPairing, backend_for_id
from .qap import QuadraticProgram, V, W, Y, compute_quotient
from .rng import Drbg

PROOF_MAGIC = b"CICP"
VERIFICATION_KEY_MAGIC = b"CICK"
EVALUATION_KEY_MAGIC = b"CICE"
WIRE_FORMAT_VERSION = 0x01
PROOF_ELEMENT_COUNT = 8

# Tag layout of a serialized proof, in element order. w_mid lives in the
# second source group so the product check can pair it directly.
_PROOF_TAGS = (G1, G2, G1, G1, G1, G1, G1, G1)

_MAX_TRAPDOOR_ATTEMPTS = 128


def element_width(modulus: int) -> int:
    """Bytes per encoded exponent; matches MockPairing.element_bytes."""
    return max(8, (modulus.bit_length() + 7) // 8)


@dataclass(frozen=True, slots=True)
class Proof:
    """Eight group elements, fixed order. Constant size for every circuit."""

    v_mid: GroupElement
    w_mid: GroupElement
    y_mid: GroupElement
    h: GroupElement
    v_alpha: GroupElement
    w_alpha: GroupElement
    y_alpha: GroupElement
    beta: GroupElement

    def elements(self) -> tuple[GroupElement, ...]:
        return (
            self.v_mid,
            self.w_mid,
            self.y_mid,
            self.h,
            self.v_alpha,
            self.w_alpha,
            self.y_alpha,
            self.beta,
        )


@dataclass(frozen=True, slots=True)
class EvaluationKey:
    modulus: int
    backend_id: int
    num_io: int
    wire_count: int
    degree: int
    # per internal wire: plain, alpha-shifted, and beta-combined encodings
    v: dict
    w: dict
    y: dict
    v_alpha: dict
    w_alpha: dict
    y_alpha: dict
    beta: dict
    s_powers: tuple

    @property
    def mid_wires(self) -> range:
        return range(self.num_io + 1, self.wire_count)


@dataclass(frozen=True, slots=True)
class VerificationKey:
    modulus: int
    backend_id: int
    num_io: int
    g1: GroupElement
    g2: GroupElement
    alpha_v_g2: GroupElement
    alpha_w_g1: GroupElement
    alpha_y_g2: GroupElement
    gamma_g2: GroupElement
    beta_gamma_g1: GroupElement
    beta_gamma_g2: GroupElement
    t_g2: GroupElement
    # index 0 is the constant-one wire, then public wires 1..num_io
    io_v: tuple
    io_w: tuple
    io_y: tuple


def setup(qap: QuadraticProgram, seed=0, drbg: Drbg | None = None):
    """Key generation. Deterministic in (qap, seed); returns (ek, vk).

    The secret point must avoid the evaluation grid 1..m, otherwise the
    target vanishes and every key element for that row degenerates. Grid
    hits are resampled; a drbg that keeps colliding is reported rather
    than looped on forever.
    """
    p = qap.modulus
    m = qap.num_constraints
    group = MockPairing(p)
    rng = drbg if drbg is not None else Drbg(seed, "keygen")

    def draw_nonzero() -> int:
        return rng.next_int(p - 1) + 1

    basis = None
    for _ in range(_MAX_TRAPDOOR_ATTEMPTS):
        s = draw_nonzero()
        basis = qap.lagrange_basis_at(s)
        if basis is not None:
            break
    if basis is None:
        raise DegenerateTrapdoor(
            f"could not sample an evaluation point off the grid 1..{m}"
        )
    alpha_v = draw_nonzero()
    alpha_w = draw_nonzero()
    alpha_y = draw_nonzero()
    beta = draw_nonzero()
    gamma = draw_nonzero()

    g1 = group.g1()
    g2 = group.g2()
    num_io = qap.num_public_io

    ek_v, ek_w, ek_y = {}, {}, {}
    ek_va, ek_wa, ek_ya, ek_b = {}, {}, {}, {}
    for wire in range(num_io + 1, qap.wire_count):
        vv = qap.column_eval(V, wire, basis)
        ww = qap.column_eval(W, wire, basis)
        yy = qap.column_eval(Y, wire, basis)
        ek_v[wire] = group.scalar_mul(g1, vv)
        ek_w[wire] = group.scalar_mul(g2, ww)
        ek_y[wire] = group.scalar_mul(g1, yy)
        ek_va[wire] = group.scalar_mul(g1, vv * alpha_v % p)
        ek_wa[wire] = group.scalar_mul(g1, ww * alpha_w % p)
        ek_ya[wire] = group.scalar_mul(g1, yy * alpha_y % p)
        ek_b[wire] = group.scalar_mul(g1, (vv + ww + yy) * beta % p)

    s_powers = []
    acc = 1
    for _ in range(m + 1):
        s_powers.append(group.scalar_mul(g1, acc))
        acc = acc * s % p

    io_v, io_w, io_y = [], [], []
    for wire in range(num_io + 1):
        io_v.append(group.scalar_mul(g1, qap.column_eval(V, wire, basis)))
        io_w.append(group.scalar_mul(g2, qap.column_eval(W, wire, basis)))
        io_y.append(group.scalar_mul(g1, qap.column_eval(Y, wire, basis)))

    ek = EvaluationKey(
        modulus=p,
        backend_id=group.backend_id,
        num_io=num_io,
        wire_count=qap.wire_count,
        degree=m,
        v=ek_v,
        w=ek_w,
        y=ek_y,
        v_alpha=ek_va,
        w_alpha=ek_wa,
        y_alpha=ek_ya,
        beta=ek_b,
        s_powers=tuple(s_powers),
    )
    vk = VerificationKey(
        modulus=p,
        backend_id=group.backend_id,
        num_io=num_io,
        g1=g1,
        g2=g2,
        alpha_v_g2=group.scalar_mul(g2, alpha_v),
        alpha_w_g1=group.scalar_mul(g1, alpha_w),
        alpha_y_g2=group.scalar_mul(g2, alpha_y),
        gamma_g2=group.scalar_mul(g2, gamma),
        beta_gamma_g1=group.scalar_mul(g1, beta * gamma % p),
        beta_gamma_g2=group.scalar_mul(g2, beta * gamma % p),
        t_g2=group.scalar_mul(g2, qap.target_at(s)),
        io_v=tuple(io_v),
        io_w=tuple(io_w),
        io_y=tuple(io_y),
    )
    return ek, vk


def _witness_values(qap: QuadraticProgram, witness) -> list[int]:
    values = witness.values if hasattr(witness, "values") else list(witness)
    if len(values) != qap.wire_count:
        raise LengthMismatch(
            f"witness has {len(values)} wires, key expects {qap.wire_count}"
        )
    return [int(v) % qap.modulus for v in values]


def _aggregate(group, table: dict, values: list[int], tag: int) -> GroupElement:
    acc = group.identity(tag)
    for wire, elt in table.items():
        k = values[wire]
        if k:
            acc = group.add(acc, group.scalar_mul(elt, k))
    return acc


def _assemble(ek: EvaluationKey, qap: QuadraticProgram, values, h_coeffs) -> Proof:
    group = backend_for_id(ek.backend_id, ek.modulus)
    if len(h_coeffs) > len(ek.s_powers):
        raise LengthMismatch("quotient degree exceeds the keyed power range")
    h = group.identity(G1)
    for i, c in enumerate(h_coeffs):
        if c:
            h = group.add(h, group.scalar_mul(ek.s_powers[i], c))
    return Proof(
        v_mid=_aggregate(group, ek.v, values, G1),
        w_mid=_aggregate(group, ek.w, values, G2),
        y_mid=_aggregate(group, ek.y, values, G1),
        h=h,
        v_alpha=_aggregate(group, ek.v_alpha, values, G1),
        w_alpha=_aggregate(group, ek.w_alpha, values, G1),
        y_alpha=_aggregate(group, ek.y_alpha, values, G1),
        beta=_aggregate(group, ek.beta, values, G1),
    )


def _check_key_shape(ek: EvaluationKey, qap: QuadraticProgram):
    if ek.modulus != qap.modulus:
        raise ModulusMismatch("key and program use different moduli")
    if ek.wire_count != qap.wire_count or ek.num_io != qap.num_public_io:
        raise LengthMismatch("key shape does not match the program")


def prove(ek: EvaluationKey, qap: QuadraticProgram, witness) -> Proof:
    """Honest prover. Rejects witnesses that do not satisfy the program."""
    _check_key_shape(ek, qap)
    values = _witness_values(qap, witness)
    try:
        quotient = compute_quotient(qap, values)
    except NotDivisible as exc:
        raise UnsatisfyingWitness(str(exc)) from exc
    return _assemble(ek, qap, values, list(quotient.coeffs))


def _prove_unchecked(ek: EvaluationKey, qap: QuadraticProgram, witness) -> Proof:
    """Cheating prover for soundness tests: ships the truncated quotient.

    Produces a structurally valid eight-element proof from any witness,
    satisfying or not. The verifier must reject these whenever the public
    io does not follow from a satisfying assignment.
    """
    _check_key_shape(ek, qap)
    values = _witness_values(qap, witness)
    quotient = compute_quotient(qap, values, _allow_remainder=True)
    return _assemble(ek, qap, values, list(quotient.coeffs))


def _fold_io(group, table: tuple, values: list[int]) -> GroupElement:
    # Constant-one wire first, then one multiply-add per public value.
    # Zero values are multiplied like any other so the verifier's work
    # depends only on io length, never on io contents.
    acc = group.scalar_mul(table[0], 1)
    for k, val in enumerate(values, start=1):
        acc = group.add(acc, group.scalar_mul(table[k], val))
    return acc


def _check_proof_shape(proof: Proof):
    for elt, tag in zip(proof.elements(), _PROOF_TAGS):
        if not isinstance(elt, GroupElement) or elt.group != tag:
            raise MalformedProof("proof element in the wrong group")


def verify(vk: VerificationKey, public_io, proof: Proof, group=None) -> bool:
    """Five pairing equations, twelve pairings total, for any circuit size.

    public_io is the flat list of public input values followed by public
    output values. Pass a backend as group to read its operation counters
    afterwards; otherwise a fresh one is constructed.
    """
    if group is None:
        group = backend_for_id(vk.backend_id, vk.modulus)
    values = [int(v) % vk.modulus for v in public_io]
    if len(values) != vk.num_io:
        raise LengthMismatch(
            f"expected {vk.num_io} public io values, got {len(values)}"
        )
    _check_proof_shape(proof)

    v_io = _fold_io(group, vk.io_v, values)
    w_io = _fold_io(group, vk.io_w, values)
    y_io = _fold_io(group, vk.io_y, values)
    v_full = group.add(v_io, proof.v_mid)
    w_full = group.add(w_io, proof.w_mid)
    y_full = group.add(y_io, proof.y_mid)

    # Divisibility: V * W - Y = H * t at the secret point.
    lhs = group.pairing(v_full, w_full)
    rhs = group.add(
        group.pairing(y_full, vk.g2), group.pairing(proof.h, vk.t_g2)
    )
    if lhs != rhs:
        return False

    # Span checks: each mid aggregate carries its alpha shadow.
    if group.pairing(proof.v_alpha, vk.g2) != group.pairing(
        proof.v_mid, vk.alpha_v_g2
    ):
        return False
    if group.pairing(proof.w_alpha, vk.g2) != group.pairing(
        vk.alpha_w_g1, proof.w_mid
    ):
        return False
    if group.pairing(proof.y_alpha, vk.g2) != group.pairing(
        proof.y_mid, vk.alpha_y_g2
    ):
        return False

    # Consistency: the beta element binds the same coefficients across v, w, y.
    lhs = group.pairing(proof.beta, vk.gamma_g2)
    rhs = group.add(
        group.pairing(group.add(proof.v_mid, proof.y_mid), vk.beta_gamma_g2),
        group.pairing(vk.beta_gamma_g1, proof.w_mid),
    )
    return lhs == rhs


# -- wire formats -------------------------------------------------------------
#
# proof: "CICP" | version | backend id | element count | count * (tag + exponent)
# With the default 61-bit modulus exponents encode in 8 bytes, so a proof is
# 4 + 3 + 8 * 9 = 79 bytes, constant across circuits.


def serialize_proof(proof: Proof, modulus: int, backend_id: int = MOCK_BACKEND_ID) -> bytes:
    width = element_width(modulus)
    out = bytearray(PROOF_MAGIC)
    out.append(WIRE_FORMAT_VERSION)
    out.append(backend_id)
    out.append(PROOF_ELEMENT_COUNT)
    for elt in proof.elements():
        out.append(elt.group)
        out += elt.exponent.to_bytes(width, "big")
    return bytes(out)


def deserialize_proof(blob: bytes) -> Proof:
    if blob[:4] != PROOF_MAGIC:
        raise BadMagic("not a proof blob")
    if len(blob) < 7:
        raise LengthMismatch("proof header truncated")
    if blob[4] != WIRE_FORMAT_VERSION:
        raise BadVersion(f"unsupported proof version {blob[4]}")
    if blob[5] not in (MOCK_BACKEND_ID,):
        raise MalformedProof(f"unknown backend id {blob[5]:#x}")
    count = blob[6]
    if count != PROOF_ELEMENT_COUNT:
        raise MalformedProof(f"expected {PROOF_ELEMENT_COUNT} elements, got {count}")
    body = blob[7:]
    if len(body) % count != 0:
        raise LengthMismatch("proof body length is not a whole element multiple")
    stride = len(body) // count
    if stride < 9:
        raise LengthMismatch("proof elements shorter than the minimum encoding")
    elements = []
    for i in range(count):
        chunk = body[i * stride : (i + 1) * stride]
        tag = chunk[0]
        if tag != _PROOF_TAGS[i]:
            raise MalformedProof(f"element {i} carries group tag {tag}")
        elements.append(GroupElement(tag, int.from_bytes(chunk[1:], "big")))
    return Proof(*elements)


def _encode_modulus(out: bytearray, modulus: int):
    mod_bytes = modulus.to_bytes((modulus.bit_length() + 7) // 8, "big")
    out.append(len(mod_bytes))
    out += mod_bytes


class _Reader:
    def __init__(self, blob: bytes, offset: int):
        self.blob = blob
        self.off = offset

    def take(self, n: int) -> bytes:
        if self.off + n > len(self.blob):
            raise LengthMismatch("key blob truncated")
        chunk = self.blob[self.off : self.off + n]
        self.off += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "big")

    def element(self, width: int) -> GroupElement:
        chunk = self.take(1 + width)
        tag = chunk[0]
        if tag not in (G1, G2):
            raise MalformedProof(f"bad group tag {tag} in key blob")
        return GroupElement(tag, int.from_bytes(chunk[1:], "big"))

    def done(self):
        if self.off != len(self.blob):
            raise LengthMismatch("trailing bytes after key blob")


def _key_header(magic: bytes, blob: bytes) -> _Reader:
    if blob[:4] != magic:
        raise BadMagic("wrong key magic")
    if len(blob) < 7:
        raise LengthMismatch("key header truncated")
    if blob[4] != WIRE_FORMAT_VERSION:
        raise BadVersion(f"unsupported key version {blob[4]}")
    return _Reader(blob, 5)


def vk_to_bytes(vk: VerificationKey) -> bytes:
    width = element_width(vk.modulus)
    out = bytearray(VERIFICATION_KEY_MAGIC)
    out.append(WIRE_FORMAT_VERSION)
    out.append(vk.backend_id)
    _encode_modulus(out, vk.modulus)
    out += vk.num_io.to_bytes(4, "big")
    fixed = (
        vk.g1,
        vk.g2,
        vk.alpha_v_g2,
        vk.alpha_w_g1,
        vk.alpha_y_g2,
        vk.gamma_g2,
        vk.beta_gamma_g1,
        vk.beta_gamma_g2,
        vk.t_g2,
    )
    for elt in fixed:
        out.append(elt.group)
        out += elt.exponent.to_bytes(width, "big")
    for table in (vk.io_v, vk.io_w, vk.io_y):
        for elt in table:
            out.append(elt.group)
            out += elt.exponent.to_bytes(width, "big")
    return bytes(out)


def vk_from_bytes(blob: bytes) -> VerificationKey:
    r = _key_header(VERIFICATION_KEY_MAGIC, blob)
    backend_id = r.u8()
    modulus = int.from_bytes(r.take(r.u8()), "big")
    if modulus < 2:
        raise MalformedProof("key modulus out of range")
    width = element_width(modulus)
    num_io = r.u32()
    fixed = [r.element(width) for _ in range(9)]
    io_v = tuple(r.element(width) for _ in range(num_io + 1))
    io_w = tuple(r.element(width) for _ in range(num_io + 1))
    io_y = tuple(r.element(width) for _ in range(num_io + 1))
    r.done()
    return VerificationKey(
        modulus=modulus,
        backend_id=backend_id,
        num_io=num_io,
        g1=fixed[0],
        g2=fixed[1],
        alpha_v_g2=fixed[2],
        alpha_w_g1=fixed[3],
        alpha_y_g2=fixed[4],
        gamma_g2=fixed[5],
        beta_gamma_g1=fixed[6],
        beta_gamma_g2=fixed[7],
        t_g2=fixed[8],
        io_v=io_v,
        io_w=io_w,
        io_y=io_y,
    )


def ek_to_bytes(ek: EvaluationKey) -> bytes:
    width = element_width(ek.modulus)
    out = bytearray(EVALUATION_KEY_MAGIC)
    out.append(WIRE_FORMAT_VERSION)
    out.append(ek.backend_id)
    _encode_modulus(out, ek.modulus)
    out += ek.num_io.to_bytes(4, "big")
    out += ek.wire_count.to_bytes(4, "big")
    out += ek.degree.to_bytes(4, "big")
    for table in (ek.v, ek.w, ek.y, ek.v_alpha, ek.w_alpha, ek.y_alpha, ek.beta):
        for wire in ek.mid_wires:
            elt = table[wire]
            out.append(elt.group)
            out += elt.exponent.to_bytes(width, "big")
    for elt in ek.s_powers:
        out.append(elt.group)
        out += elt.exponent.to_bytes(width, "big")
    return bytes(out)


def ek_from_bytes(blob: bytes) -> EvaluationKey:
    r = _key_header(EVALUATION_KEY_MAGIC, blob)
    backend_id = r.u8()
    modulus = int.from_bytes(r.take(r.u8()), "big")
    if modulus < 2:
        raise MalformedProof("key modulus out of range")
    width = element_width(modulus)
    num_io = r.u32()
    wire_count = r.u32()
    degree = r.u32()
    if wire_count < num_io + 1:
        raise MalformedProof("key wire count smaller than its io section")
    mid = range(num_io + 1, wire_count)
    tables = []
    for _ in range(7):
        tables.append({wire: r.element(width) for wire in mid})
    s_powers = tuple(r.element(width) for _ in range(degree + 1))
    r.done()
    return EvaluationKey(
        modulus=modulus,
        backend_id=backend_id,
        num_io=num_io,
        wire_count=wire_count,
        degree=degree,
        v=tables[0],
        w=tables[1],
        y=tables[2],
        v_alpha=tables[3],
        w_alpha=tables[4],
        y_alpha=tables[5],
        beta=tables[6],
        s_powers=s_powers,
    )

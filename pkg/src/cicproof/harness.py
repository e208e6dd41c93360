"""Multi-actor simulation: client, worker, miner, and adversary in one process.

Actors exchange documents through in-process content servers (write-once
key/value stores addressed by path, fetched with hash checks) and settle
through a single Broker instance. A scenario script drives the whole thing:

    tick | actor | action | key=value key=value ...

Lines execute in order; ticks are non-decreasing and advance the broker
clock. Every observable effect is appended to a trace, and a scenario run
is deterministic down to the byte: same script, same seed, same trace.

The miner is the transaction executor. It never trusts either party: the
public instance must hash to the job's registered spec hash, and the io
vector it submits is assembled from the published documents, not from
anything the worker claims out of band.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .apps import (
    build_circuit,
    instance_to_text,
    io_shape,
    make_spec,
    parse_instance_text,
    public_instance_text,
    random_instance,
    solve,
)
from .broker import Broker
from .errors import (
    CicproofError,
    HashMismatch,
    MalformedScript,
    NotFound,
    PathAlreadyPublished,
)
from .pairing import G1, G2, GroupElement
from .qap import r1cs_to_qap
from .r1cs import to_r1cs
from .rng import Drbg
from .snark import (
    Proof,
    deserialize_proof,
    ek_from_bytes,
    ek_to_bytes,
    prove,
    serialize_proof,
    setup,
)


class ContentServer:
    """Write-once blob store. Publishing returns the content hash."""

    def __init__(self, name: str = ""):
        self.name = name
        self._blobs: dict[str, bytes] = {}

    def publish(self, path: str, data: bytes) -> str:
        if path in self._blobs:
            raise PathAlreadyPublished(f"{self.name}:{path} already holds content")
        self._blobs[path] = bytes(data)
        return hashlib.sha256(data).hexdigest()

    def fetch(self, path: str) -> bytes:
        blob = self._blobs.get(path)
        if blob is None:
            raise NotFound(f"{self.name}:{path} has not been published")
        return blob

    def fetch_verified(self, path: str, expected_hash: str) -> bytes:
        blob = self.fetch(path)
        digest = hashlib.sha256(blob).hexdigest()
        if digest != expected_hash:
            raise HashMismatch(
                f"{self.name}:{path} hashes to {digest[:12]}, expected {expected_hash[:12]}"
            )
        return blob

    def corrupt(self, path: str, data: bytes):
        """Overwrite published content in place. Adversary hook, bypasses write-once."""
        if path not in self._blobs:
            raise NotFound(f"{self.name}:{path} has not been published")
        self._blobs[path] = bytes(data)


# -- scripts -----------------------------------------------------------------------


def parse_scenario(text: str) -> list:
    """Parse script lines into (tick, actor, action, params) tuples."""
    steps = []
    last_tick = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) < 3:
            raise MalformedScript(
                f"line {lineno}: expected 'tick | actor | action | ...'"
            )
        try:
            tick = int(fields[0])
        except ValueError:
            raise MalformedScript(f"line {lineno}: bad tick {fields[0]!r}") from None
        if tick < last_tick:
            raise MalformedScript(f"line {lineno}: tick {tick} moves backwards")
        last_tick = tick
        actor, action = fields[1], fields[2]
        if not actor or not action:
            raise MalformedScript(f"line {lineno}: empty actor or action")
        params = {}
        for tok in " ".join(fields[3:]).split():
            if "=" not in tok:
                raise MalformedScript(f"line {lineno}: expected key=value, got {tok!r}")
            key, _, value = tok.partition("=")
            if not key or key in params:
                raise MalformedScript(f"line {lineno}: bad or duplicate key {key!r}")
            try:
                params[key] = int(value)
            except ValueError:
                params[key] = value
        steps.append((tick, actor, action, params))
    return steps


@dataclass
class _JobContext:
    label: int
    client: str
    spec: object
    pub: list
    priv: list
    broker_id: int
    worker: str | None = None


@dataclass
class ScenarioResult:
    trace: str
    broker: Broker
    servers: dict
    jobs: dict


_JOB_KEYS = ("job", "fee", "collateral", "max_duration", "seed", "app")


def _zero_proof() -> Proof:
    tags = (G1, G2, G1, G1, G1, G1, G1, G1)
    return Proof(*(GroupElement(t, 0) for t in tags))


class ScenarioRunner:
    def __init__(self, seed=0, initial_balance: int = 1000):
        self.seed = seed
        self.initial_balance = initial_balance
        self.broker = Broker()
        self.servers: dict[str, ContentServer] = {}
        self.jobs: dict[int, _JobContext] = {}
        self.trace: list[str] = []
        self._log_mark = 0

    # -- plumbing ---------------------------------------------------------------

    def _server(self, actor: str) -> ContentServer:
        if actor not in self.servers:
            self.servers[actor] = ContentServer(actor)
        return self.servers[actor]

    def _ensure_funded(self, actor: str):
        if actor not in self.broker.balances:
            self.broker.fund(actor, self.initial_balance)
            self._emit(actor, "fund", f"balance={self.initial_balance}")

    def _emit(self, actor: str, event: str, details: str):
        self.trace.append(
            f"{self.broker.tick} | {actor} | {event} | {details}"
        )

    def _drain_broker_log(self):
        for line in self.broker.log[self._log_mark :]:
            self.trace.append(line)
        self._log_mark = len(self.broker.log)

    def _job_ctx(self, params) -> _JobContext:
        label = params.get("job")
        ctx = self.jobs.get(label)
        if ctx is None:
            raise MalformedScript(f"unknown job label {label!r}")
        return ctx

    # -- actions ---------------------------------------------------------------

    def _act_setup_job(self, actor: str, params: dict):
        label = params["job"]
        if label in self.jobs:
            raise MalformedScript(f"job label {label} reused")
        app = params["app"]
        spec_params = {
            k: v for k, v in params.items() if k not in _JOB_KEYS
        }
        spec = make_spec(app, **spec_params)
        rng = Drbg(params.get("seed", self.seed), f"instance/{label}")
        pub, priv = random_instance(spec, rng)

        circuit = build_circuit(spec)
        qap = r1cs_to_qap(to_r1cs(circuit))
        ek, vk = setup(qap, seed=params.get("seed", self.seed))

        server = self._server(actor)
        public_doc = public_instance_text(spec, pub).encode()
        spec_hash = server.publish(f"jobs/{label}/instance", public_doc)
        self._emit(actor, "publish", f"jobs/{label}/instance sha={spec_hash[:12]}")
        if io_shape(spec)[2]:
            priv_doc = instance_to_text(spec, pub, priv).encode()
            priv_hash = server.publish(f"jobs/{label}/private", priv_doc)
            self._emit(actor, "publish", f"jobs/{label}/private sha={priv_hash[:12]}")
        ek_hash = server.publish(f"jobs/{label}/ek", ek_to_bytes(ek))
        self._emit(actor, "publish", f"jobs/{label}/ek sha={ek_hash[:12]}")

        broker_id = self.broker.create_job(
            client=actor,
            spec_hash=spec_hash,
            vk=vk,
            fee=params["fee"],
            collateral=params["collateral"],
            max_duration=params["max_duration"],
            nondet_count=io_shape(spec)[2],
        )
        self.jobs[label] = _JobContext(
            label=label, client=actor, spec=spec, pub=pub, priv=priv, broker_id=broker_id
        )

    def _act_register(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        self.broker.register_worker(actor, ctx.broker_id)
        ctx.worker = actor

    def _act_compute(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        job = self.broker.jobs[ctx.broker_id]
        client_server = self._server(ctx.client)
        public_doc = client_server.fetch_verified(
            f"jobs/{ctx.label}/instance", job.spec_hash
        )
        spec, pub, priv = parse_instance_text(public_doc.decode())
        if priv is None:
            priv_doc = client_server.fetch(f"jobs/{ctx.label}/private")
            spec_p, pub_p, priv = parse_instance_text(priv_doc.decode())
            if spec_p != spec or pub_p != pub or priv is None:
                raise HashMismatch("private document disagrees with the public one")
        ek = ek_from_bytes(client_server.fetch(f"jobs/{ctx.label}/ek"))

        circuit = build_circuit(spec)
        qap = r1cs_to_qap(to_r1cs(circuit))
        witness, outputs = solve(spec, pub, priv)
        proof = prove(ek, qap, witness)

        server = self._server(actor)
        result_doc = ("outputs = " + " ".join(str(v) for v in outputs) + "\n").encode()
        res_hash = server.publish(f"jobs/{ctx.label}/result", result_doc)
        self._emit(actor, "publish", f"jobs/{ctx.label}/result sha={res_hash[:12]}")
        proof_blob = serialize_proof(proof, spec.modulus)
        prf_hash = server.publish(f"jobs/{ctx.label}/proof", proof_blob)
        self._emit(actor, "publish", f"jobs/{ctx.label}/proof sha={prf_hash[:12]}")

    def _act_process(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        job = self.broker.jobs[ctx.broker_id]
        client_server = self._server(ctx.client)
        worker_server = self._server(job.worker)

        public_doc = client_server.fetch_verified(
            f"jobs/{ctx.label}/instance", job.spec_hash
        )
        spec, pub, _ = parse_instance_text(public_doc.decode())
        result_doc = worker_server.fetch(f"jobs/{ctx.label}/result").decode()
        outputs = _parse_result_doc(result_doc)
        try:
            proof = deserialize_proof(worker_server.fetch(f"jobs/{ctx.label}/proof"))
        except CicproofError:
            proof = _zero_proof()

        io = list(pub) + list(outputs)
        paid = self.broker.get_paid(job.worker, ctx.broker_id, io, proof)
        self._drain_broker_log()
        if paid:
            delivered = client_server.publish(
                f"jobs/{ctx.label}/delivered", result_doc.encode()
            )
            self._emit(actor, "deliver", f"jobs/{ctx.label}/delivered sha={delivered[:12]}")

    def _act_corrupt_result(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        job = self.broker.jobs[ctx.broker_id]
        worker_server = self._server(job.worker)
        path = f"jobs/{ctx.label}/result"
        outputs = _parse_result_doc(worker_server.fetch(path).decode())
        index = params.get("index", 0)
        delta = params.get("delta", 1)
        outputs[index] = (outputs[index] + delta) % ctx.spec.modulus
        doc = ("outputs = " + " ".join(str(v) for v in outputs) + "\n").encode()
        worker_server.corrupt(path, doc)
        self._emit(actor, "corrupt", f"{path} index={index} delta={delta}")

    def _act_corrupt_proof(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        job = self.broker.jobs[ctx.broker_id]
        worker_server = self._server(job.worker)
        path = f"jobs/{ctx.label}/proof"
        blob = bytearray(worker_server.fetch(path))
        offset = params.get("offset", 0) % len(blob)
        blob[offset] ^= 0xFF
        worker_server.corrupt(path, bytes(blob))
        self._emit(actor, "corrupt", f"{path} offset={offset}")

    def _act_cancel(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        self.broker.cancel_job(actor, ctx.broker_id)

    def _act_claim_timeout(self, actor: str, params: dict):
        ctx = self._job_ctx(params)
        self.broker.claim_timeout(actor, ctx.broker_id)

    _ACTIONS = {
        "setup_job": _act_setup_job,
        "register": _act_register,
        "compute": _act_compute,
        "process": _act_process,
        "corrupt_result": _act_corrupt_result,
        "corrupt_proof": _act_corrupt_proof,
        "cancel": _act_cancel,
        "claim_timeout": _act_claim_timeout,
    }

    # -- driver ---------------------------------------------------------------

    def run(self, text: str) -> ScenarioResult:
        for tick, actor, action, params in parse_scenario(text):
            handler = self._ACTIONS.get(action)
            if handler is None:
                raise MalformedScript(f"unknown action {action!r}")
            self.broker.advance_to(tick)
            self._ensure_funded(actor)
            handler(self, actor, params)
            self._drain_broker_log()
        return ScenarioResult(
            trace="\n".join(self.trace) + "\n",
            broker=self.broker,
            servers=self.servers,
            jobs=self.jobs,
        )


def _parse_result_doc(text: str) -> list[int]:
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("outputs"):
            _, _, value = line.partition("=")
            return [int(tok) for tok in value.split()]
    raise MalformedScript("result document has no outputs line")


def run_scenario(text: str, seed=0, initial_balance: int = 1000) -> ScenarioResult:
    return ScenarioRunner(seed=seed, initial_balance=initial_balance).run(text)

"""Escrow broker: the on-chain half of the outsourcing protocol.

The broker holds client fees and worker collateral in per-job escrow and
releases them based on a single succinct check. A job walks

    OPEN -> REGISTERED -> PAID | SLASHED          (proof submitted)
    OPEN -> CANCELLED                             (client backs out)
    REGISTERED -> SLASHED                         (deadline passes, client claims)

PROOF_SUBMITTED exists as a state but only inside get_paid: submission and
adjudication happen in one atomic step, so no job is ever observed in it
between operations.

Token conservation is a hard invariant: apart from explicit funding, every
operation moves value between actor balances and job escrow without creating
or destroying any. total_tokens() makes that checkable from outside.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import (
    CicproofError,
    DeadlineNotPassed,
    InsufficientBalance,
    InvalidParameters,
    JobNotOpen,
    JobNotRegistered,
    NotFound,
    NotTheClient,
    NotTheWorker,
)
from .snark import Proof, VerificationKey, verify


class JobState(enum.Enum):
    OPEN = "open"
    REGISTERED = "registered"
    PROOF_SUBMITTED = "proof_submitted"
    PAID = "paid"
    SLASHED = "slashed"
    CANCELLED = "cancelled"


TERMINAL_STATES = frozenset((JobState.PAID, JobState.SLASHED, JobState.CANCELLED))


@dataclass
class Job:
    job_id: int
    client: str
    spec_hash: str
    vk: VerificationKey
    fee: int
    collateral: int
    max_duration: int
    created_at: int
    # declared count of private (nondeterministic) inputs; recorded so a
    # dispute layer could demand them, the broker itself never reads it
    nondet_count: int = 0
    state: JobState = JobState.OPEN
    worker: str | None = None
    registered_at: int | None = None
    deadline: int | None = None
    escrow: int = 0


class Broker:
    def __init__(self):
        self.balances: dict[str, int] = {}
        self.jobs: dict[int, Job] = {}
        self.tick = 0
        self.log: list[str] = []
        self._next_id = 1

    # -- funds ---------------------------------------------------------------

    def fund(self, actor: str, amount: int):
        """Mint tokens into an actor's balance (scenario setup only)."""
        if amount < 0:
            raise InvalidParameters("cannot fund a negative amount")
        self.balances[actor] = self.balances.get(actor, 0) + amount

    def balance(self, actor: str) -> int:
        return self.balances.get(actor, 0)

    def total_tokens(self) -> int:
        return sum(self.balances.values()) + sum(
            job.escrow for job in self.jobs.values()
        )

    def _debit(self, actor: str, amount: int):
        if self.balances.get(actor, 0) < amount:
            raise InsufficientBalance(
                f"{actor} holds {self.balances.get(actor, 0)}, needs {amount}"
            )
        self.balances[actor] -= amount

    def _credit(self, actor: str, amount: int):
        self.balances[actor] = self.balances.get(actor, 0) + amount

    # -- clock ---------------------------------------------------------------

    def advance_to(self, tick: int):
        if tick < self.tick:
            raise InvalidParameters(f"clock cannot move back to {tick}")
        self.tick = tick

    # -- logging ---------------------------------------------------------------

    def _log(self, op: str, job_id, actor: str, outcome: str, deltas: dict):
        moved = ",".join(
            f"{who}:{amt:+d}" for who, amt in sorted(deltas.items()) if amt
        )
        self.log.append(
            f"{self.tick} | {op} | {job_id} | {actor} | {outcome} | {moved or '-'}"
        )

    # -- operations ---------------------------------------------------------------

    def _job(self, job_id: int) -> Job:
        job = self.jobs.get(job_id)
        if job is None:
            raise NotFound(f"no job {job_id}")
        return job

    def create_job(
        self,
        client: str,
        spec_hash: str,
        vk: VerificationKey,
        fee: int,
        collateral: int,
        max_duration: int,
        nondet_count: int = 0,
    ) -> int:
        if fee < 0 or collateral < 0:
            raise InvalidParameters("fee and collateral must be non-negative")
        if max_duration < 1:
            raise InvalidParameters("max_duration must be at least 1 tick")
        self._debit(client, fee)
        job = Job(
            job_id=self._next_id,
            client=client,
            spec_hash=spec_hash,
            vk=vk,
            fee=fee,
            collateral=collateral,
            max_duration=max_duration,
            created_at=self.tick,
            nondet_count=nondet_count,
            escrow=fee,
        )
        self._next_id += 1
        self.jobs[job.job_id] = job
        self._log("create", job.job_id, client, "open", {client: -fee})
        return job.job_id

    def cancel_job(self, client: str, job_id: int):
        job = self._job(job_id)
        if job.client != client:
            raise NotTheClient(f"{client} did not create job {job_id}")
        if job.state is not JobState.OPEN:
            raise JobNotOpen(f"job {job_id} is {job.state.value}")
        job.state = JobState.CANCELLED
        refund = job.escrow
        job.escrow = 0
        self._credit(client, refund)
        self._log("cancel", job_id, client, "cancelled", {client: +refund})

    def register_worker(self, worker: str, job_id: int):
        job = self._job(job_id)
        if job.state is not JobState.OPEN:
            raise JobNotOpen(f"job {job_id} is {job.state.value}")
        self._debit(worker, job.collateral)
        job.escrow += job.collateral
        job.state = JobState.REGISTERED
        job.worker = worker
        job.registered_at = self.tick
        job.deadline = self.tick + job.max_duration
        self._log("register", job_id, worker, "registered", {worker: -job.collateral})

    def get_paid(self, worker: str, job_id: int, public_io, proof: Proof) -> bool:
        """Submit a proof and settle the job in one atomic step.

        Pays the worker iff the clock has not passed the deadline and the
        proof verifies against the job's key and the submitted io. Anything
        else, including a proof the verifier rejects structurally, slashes
        the collateral to the client. Returns True when paid.
        """
        job = self._job(job_id)
        if job.state is not JobState.REGISTERED:
            raise JobNotRegistered(f"job {job_id} is {job.state.value}")
        if job.worker != worker:
            raise NotTheWorker(f"{worker} is not registered on job {job_id}")
        job.state = JobState.PROOF_SUBMITTED
        if self.tick <= job.deadline:
            try:
                accepted = verify(job.vk, public_io, proof)
            except CicproofError:
                accepted = False
        else:
            accepted = False

        payout = job.escrow
        job.escrow = 0
        if accepted:
            job.state = JobState.PAID
            self._credit(worker, payout)
            self._log("get_paid", job_id, worker, "paid", {worker: +payout})
            return True
        job.state = JobState.SLASHED
        self._credit(job.client, payout)
        self._log("get_paid", job_id, worker, "slashed", {job.client: +payout})
        return False

    def claim_timeout(self, client: str, job_id: int):
        """Client recovers fee plus collateral once the deadline has passed."""
        job = self._job(job_id)
        if job.client != client:
            raise NotTheClient(f"{client} did not create job {job_id}")
        if job.state is not JobState.REGISTERED:
            raise JobNotRegistered(f"job {job_id} is {job.state.value}")
        if self.tick <= job.deadline:
            raise DeadlineNotPassed(
                f"job {job_id} deadline is tick {job.deadline}, now {self.tick}"
            )
        job.state = JobState.SLASHED
        payout = job.escrow
        job.escrow = 0
        self._credit(client, payout)
        self._log("timeout", job_id, client, "slashed", {client: +payout})

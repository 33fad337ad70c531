"""Command line front end.

All reports are single JSON documents on standard output; diagnostics go
to standard error. Exit codes: 0 success / all checks pass, 1 an axiom or
verification failed, 2 malformed input, 3 precondition or guard
violation.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys

import click

from .core import Alternative, Preference, Profile, is_qualified, tally
from .rules import AnonymousTableRule, QualifiedMajorityRule, TableRule
from .axioms import run_all_checks
from .verifier import (
    SPACE_ANONYMOUS,
    SPACE_FULL,
    GuardError,
    decode_rule,
    enumerate_anonymous,
    enumerate_full,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_GUARD = 3

_CHOICE_TO_PREF = {
    "X": Preference.STRICT_X,
    "Y": Preference.STRICT_Y,
    "TIE": Preference.INDIFFERENT,
}
_PREF_TO_CHOICE = {p: c for c, p in _CHOICE_TO_PREF.items()}


class BallotError(ValueError):
    """Malformed ballot file."""


def read_ballots_text(text: str) -> Profile:
    """Parse ballot CSV: header ``voter,choice``, one row per voter.

    Choices are X, Y or TIE (case-insensitive); voter ids must be unique;
    at least two rows are required. Row order defines voter index order.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise BallotError("empty ballot file")
    header = [c.strip().lower() for c in rows[0]]
    if header != ["voter", "choice"]:
        raise BallotError('ballot files start with the header "voter,choice"')
    prefs = []
    seen: set[str] = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise BallotError(f"line {lineno}: expected two columns, got {len(row)}")
        voter, choice = row[0].strip(), row[1].strip().upper()
        if not voter:
            raise BallotError(f"line {lineno}: empty voter id")
        if voter in seen:
            raise BallotError(f"line {lineno}: duplicate voter id {voter!r}")
        seen.add(voter)
        if choice not in _CHOICE_TO_PREF:
            raise BallotError(f"line {lineno}: choice must be X, Y or TIE, got {row[1]!r}")
        prefs.append(_CHOICE_TO_PREF[choice])
    if len(prefs) < 2:
        raise BallotError("a ballot file needs at least two voters")
    return Profile(tuple(prefs))


def read_ballots(path: str) -> Profile:
    with open(path, "r", encoding="utf-8", newline="") as fp:
        return read_ballots_text(fp.read())


def ballots_text(profile: Profile) -> str:
    """Render a profile as a ballot file; re-ingesting yields the profile back.

    Voter ids are v1..vn (1-based, matching CLI-facing numbering)."""
    lines = ["voter,choice"]
    for i, pref in enumerate(profile, start=1):
        lines.append(f"v{i},{_PREF_TO_CHOICE[pref]}")
    return "\n".join(lines) + "\n"


def write_ballots(profile: Profile, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fp:
        fp.write(ballots_text(profile))


def _emit(doc) -> None:
    click.echo(json.dumps(doc, indent=2))


def _die(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_rule(spec: str, n: int, anonymous: bool):
    """A rule from ``builtin:qm:Q:A`` or from a table file path."""
    if spec.startswith("builtin:"):
        parts = spec.split(":")
        if len(parts) != 4 or parts[1] != "qm":
            _die(EXIT_BAD_INPUT, f"unknown builtin rule {spec!r}; expected builtin:qm:Q:{{X,Y}}")
        try:
            quota = int(parts[2])
            reform = Alternative(parts[3].upper())
        except ValueError:
            _die(EXIT_BAD_INPUT, f"unknown builtin rule {spec!r}; expected builtin:qm:Q:{{X,Y}}")
        try:
            return QualifiedMajorityRule(n, quota, reform)
        except ValueError as exc:
            _die(EXIT_GUARD, str(exc))
    try:
        with open(spec, "r", encoding="utf-8") as fp:
            line = fp.read()
    except OSError as exc:
        _die(EXIT_BAD_INPUT, str(exc))
    try:
        if anonymous:
            return AnonymousTableRule.from_line(n, line)
        return TableRule.from_line(n, line)
    except ValueError as exc:
        _die(EXIT_BAD_INPUT, str(exc))


@click.group()
def main() -> None:
    """Qualified majority voting over two alternatives X and Y."""


@main.command()
@click.option("--ballots", "ballots_path", required=True, help="CSV ballot file.")
@click.option("--q", "quota", required=True, type=int, help="Strict supporters the reform needs.")
@click.option("--reform", required=True, type=click.Choice(["X", "Y"], case_sensitive=False))
def decide(ballots_path: str, quota: int, reform: str) -> None:
    """Decide a ballot file under a qualified majority rule."""
    try:
        profile = read_ballots(ballots_path)
    except (OSError, BallotError) as exc:
        _die(EXIT_BAD_INPUT, str(exc))
    n = profile.n
    if not is_qualified(quota, n):
        _die(
            EXIT_GUARD,
            f"quota {quota} is not qualified for {n} voters: need 0 <= q <= n and q > n/2",
        )
    alt = Alternative(reform.upper())
    rule = QualifiedMajorityRule(n, quota, alt)
    t = tally(profile)
    _emit(
        {
            "n": n,
            "tally": {"x": t.n_x, "y": t.n_y, "indifferent": t.n_ind},
            "q": quota,
            "reform": alt.value,
            "winner": rule.evaluate(profile).value,
        }
    )


@main.command("tally")
@click.option("--ballots", "ballots_path", required=True, help="CSV ballot file.")
def tally_cmd(ballots_path: str) -> None:
    """Tally a ballot file without deciding it."""
    try:
        profile = read_ballots(ballots_path)
    except (OSError, BallotError) as exc:
        _die(EXIT_BAD_INPUT, str(exc))
    t = tally(profile)
    _emit({"n": profile.n, "tally": {"x": t.n_x, "y": t.n_y, "indifferent": t.n_ind}})


@main.command()
@click.option("--rule", "rule_spec", required=True, help="Table file path or builtin:qm:Q:{X,Y}.")
@click.option("--n", "n", required=True, type=int, help="Number of voters.")
@click.option("--q", "quota", required=True, type=int, help="Quota for the q-neutrality check.")
@click.option("--anonymous", is_flag=True, help="Read the file as an anonymous tally table.")
def check(rule_spec: str, n: int, quota: int, anonymous: bool) -> None:
    """Check a rule for anonymity, responsiveness and q-neutrality."""
    if n < 1:
        _die(EXIT_GUARD, "need at least one voter")
    rule = _load_rule(rule_spec, n, anonymous)
    if not 0 <= quota <= n:
        _die(EXIT_GUARD, f"quota must lie in 0..{n}, got {quota}")
    reports = run_all_checks(rule, n, quota)
    _emit([r.to_json_dict() for r in reports])
    sys.exit(EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED)


def _run_enumerations(n, quotas, space, workers, long_run):
    runner = enumerate_full if space == SPACE_FULL else enumerate_anonymous
    results = []
    for q in quotas:
        try:
            results.append(runner(n, q, workers=workers, allow_long_run=long_run))
        except GuardError as exc:
            _die(EXIT_GUARD, str(exc))
        except ValueError as exc:
            _die(EXIT_GUARD, str(exc))
    return results


@main.command()
@click.option("--n", "n", required=True, type=int, help="Number of voters.")
@click.option("--q", "quota", type=int, default=None, help="Single quota to verify.")
@click.option("--all-q", "all_q", is_flag=True, help="Verify every quota 0..n.")
@click.option(
    "--space",
    type=click.Choice([SPACE_FULL, SPACE_ANONYMOUS]),
    default=SPACE_FULL,
    show_default=True,
)
@click.option("--workers", type=int, default=None, help="Defaults to the CPU count.")
@click.option("--no-timing", "no_timing", is_flag=True, help="Omit elapsed_ms from reports.")
@click.option("--long-run", "long_run", is_flag=True, help="Allow the flagged large sweeps.")
def verify(n, quota, all_q, space, workers, no_timing, long_run) -> None:
    """Enumerate a rule space and compare survivors against the quota rules."""
    if (quota is None) and not all_q:
        _die(EXIT_BAD_INPUT, "provide --q or --all-q")
    if (quota is not None) and all_q:
        _die(EXIT_BAD_INPUT, "--q and --all-q are mutually exclusive")
    workers = workers or os.cpu_count() or 1
    quotas = range(n + 1) if all_q else [quota]
    results = _run_enumerations(n, quotas, space, workers, long_run)
    _emit([r.to_json_dict(include_timing=not no_timing) for r in results])
    sys.exit(EXIT_OK if all(r.matches_theorem for r in results) else EXIT_FAILED)


@main.command("enumerate")
@click.option("--n", "n", required=True, type=int, help="Number of voters.")
@click.option("--q", "quota", required=True, type=int, help="Quota to enumerate at.")
@click.option(
    "--space",
    type=click.Choice([SPACE_FULL, SPACE_ANONYMOUS]),
    default=SPACE_FULL,
    show_default=True,
)
@click.option("--workers", type=int, default=None, help="Defaults to the CPU count.")
@click.option("--no-timing", "no_timing", is_flag=True, help="Omit elapsed_ms from the report.")
@click.option("--long-run", "long_run", is_flag=True, help="Allow the flagged large sweeps.")
def enumerate_cmd(n, quota, space, workers, no_timing, long_run) -> None:
    """Like verify for one quota, but include each survivor's full table."""
    workers = workers or os.cpu_count() or 1
    result = _run_enumerations(n, [quota], space, workers, long_run)[0]
    doc = result.to_json_dict(include_timing=not no_timing)
    for entry in doc["survivors"]:
        entry["table"] = decode_rule(space, n, entry["encoding"]).to_line()
    _emit(doc)
    sys.exit(EXIT_OK if result.matches_theorem else EXIT_FAILED)


if __name__ == "__main__":
    main()

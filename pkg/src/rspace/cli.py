"""``rspace`` command-line interface.

Exit codes: 0 success or true, 1 false or a negative verdict, 2 usage or
parse error, 3 numerical degeneracy (undefined meet, exhausted search).
Object-valued commands (reduce, mpi, join, ground, meet) always print the
object in its JSON file format; other commands print one line of text, or
a JSON report with ``--json``.
"""
import functools
import json
import sys

import click

from . import io
from .errors import DegeneracyError, InvalidArgument, Unsupported
from .ffham import (
    LocalHamiltonian,
    ground_space,
    is_irreducible_ground_space,
    is_minimal_ground_space,
    meet,
)
from .fixtures import run_suite
from .kernels import BACKEND
from .reduced import join, leq, member_theta, mpi, reduce
from .search import FAMILIES, SearchBudget
from .semilattice import (
    NO,
    decompose_irreducibles,
    is_atom,
    is_join_irreducible,
    join_prime_witness,
    validate_join_prime_witness,
)
from .subspace import DEFAULT_TOL, Subspace

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class Settings:
    def __init__(self, tol, seed, as_json):
        self.tol = tol
        self.seed = seed
        self.as_json = as_json

    def report(self, payload, text, code=EXIT_OK):
        if self.as_json:
            payload = dict(payload, tol=self.tol, seed=self.seed)
            click.echo(json.dumps(payload, indent=2))
        else:
            click.echo(text)
        sys.exit(code)


def handled(fn):
    """Map library exceptions to exit codes with a one-line message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DegeneracyError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_DEGENERATE)
        except (InvalidArgument, Unsupported) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def _read(file):
    return io.loads(file.read(), getattr(file, "name", "<input>"))


def _emit(obj, out):
    text = json.dumps(obj, indent=2)
    if out is None:
        click.echo(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _load_subspace(file, tol):
    """Subspace document, or ``{"dims", "state"}`` for a single state."""
    doc = _read(file)
    if isinstance(doc, dict) and "state" in doc and "vectors" not in doc:
        doc = dict(doc, vectors=[doc["state"]])
    return io.parse_subspace(doc, tol)


def _budget(settings, samples, structured=True):
    return SearchBudget(random_samples=samples, seed=settings.seed,
                        structured=FAMILIES if structured else ())


pass_settings = click.make_pass_decorator(Settings)
input_file = click.argument("file", type=click.File("r"))
k_option = click.option("--k", "k", type=click.IntRange(min=1), required=True,
                        help="Locality (size of the particle subsets).")
out_option = click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
                          help="Write the result here instead of stdout.")
samples_option = click.option("--samples", type=click.IntRange(min=0), default=200,
                              show_default=True, help="Random candidates to try.")
structured_option = click.option("--structured/--random-only", default=True,
                                 show_default=True,
                                 help="Include basis, stored-basis and product candidates.")


@click.group()
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), envvar="RS_TOL",
              default=DEFAULT_TOL, show_default=True, help="Rank threshold (env RS_TOL).")
@click.option("--seed", type=click.IntRange(min=0), envvar="RS_SEED", default=0,
              show_default=True, help="Search seed (env RS_SEED).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON reports.")
@click.version_option(package_name="artifact")
@click.pass_context
def main(ctx, tol, seed, as_json):
    """Reduced spaces of multi-particle subspaces and frustration-free Hamiltonians."""
    ctx.obj = Settings(tol, seed, as_json)


# -- reduced-space vectors ------------------------------------------------

@main.command("reduce")
@input_file
@k_option
@out_option
@pass_settings
@handled
def cmd_reduce(settings, file, k, out):
    """k-particle reduced spaces of a subspace (or single state) FILE."""
    shape, s = _load_subspace(file, settings.tol)
    if s.rank < 1:
        raise InvalidArgument("input spans the zero subspace")
    if k > shape.n:
        raise InvalidArgument(f"k={k} exceeds the number of particles {shape.n}")
    _emit(io.rsv_to_json(reduce(s, shape, k)), out)


@main.command("mpi")
@input_file
@out_option
@pass_settings
@handled
def cmd_mpi(settings, file, out):
    """Maximal pre-image of a reduced-space vector FILE."""
    v = io.parse_rsv(_read(file), settings.tol)
    _emit(io.subspace_to_json(v.shape, mpi(v)), out)


@main.command("join")
@click.argument("first", type=click.File("r"))
@click.argument("second", type=click.File("r"))
@out_option
@pass_settings
@handled
def cmd_join(settings, first, second, out):
    """Componentwise sum of two reduced-space vectors."""
    a = io.parse_rsv(_read(first), settings.tol)
    b = io.parse_rsv(_read(second), settings.tol)
    _emit(io.rsv_to_json(join(a, b)), out)


@main.command("member")
@input_file
@pass_settings
@handled
def cmd_member(settings, file):
    """Exit 0 if FILE is the reduced-space vector of some subspace, else 1."""
    v = io.parse_rsv(_read(file), settings.tol)
    g = mpi(v)
    result = g.rank >= 1 and member_theta(v)
    settings.report({"member": result, "preimage_rank": g.rank},
                    f"member: {str(result).lower()} (pre-image rank {g.rank})",
                    EXIT_OK if result else EXIT_FALSE)


@main.command("leq")
@click.argument("first", type=click.File("r"))
@click.argument("second", type=click.File("r"))
@pass_settings
@handled
def cmd_leq(settings, first, second):
    """Exit 0 if FIRST <= SECOND componentwise, else 1."""
    a = io.parse_rsv(_read(first), settings.tol)
    b = io.parse_rsv(_read(second), settings.tol)
    result = leq(a, b)
    settings.report({"leq": result}, f"leq: {str(result).lower()}",
                    EXIT_OK if result else EXIT_FALSE)


# -- structure ------------------------------------------------------------

def _verdict_report(settings, verdict, shape, label):
    text = f"{label}: {verdict.status}"
    if verdict.rule:
        text += f" ({verdict.rule})"
    text += f", {verdict.samples_used} candidates, seed {verdict.seed}"
    settings.report(io.verdict_to_json(verdict, shape), text,
                    EXIT_FALSE if verdict.status == NO else EXIT_OK)


@main.command("atom")
@input_file
@samples_option
@structured_option
@pass_settings
@handled
def cmd_atom(settings, file, samples, structured):
    """Atom check of a reduced-space vector (CertifiedYes / No / Unknown)."""
    v = io.parse_rsv(_read(file), settings.tol)
    _verdict_report(settings, is_atom(v, _budget(settings, samples, structured)), v.shape,
                    "atom")


@main.command("irreducible")
@input_file
@samples_option
@structured_option
@pass_settings
@handled
def cmd_irreducible(settings, file, samples, structured):
    """Join-irreducibility check of a reduced-space vector."""
    v = io.parse_rsv(_read(file), settings.tol)
    verdict = is_join_irreducible(v, _budget(settings, samples, structured))
    _verdict_report(settings, verdict, v.shape, "join-irreducible")


@main.command("jpwitness")
@input_file
@k_option
@pass_settings
@handled
def cmd_jpwitness(settings, file, k):
    """Pair (W1, W2) showing the image of a single state is not join prime."""
    shape, s = _load_subspace(file, settings.tol)
    w = join_prime_witness(s, shape, k)
    target = reduce(s, shape, k)
    ok = validate_join_prime_witness(target, w.w1, w.w2)
    payload = {"construction": w.construction, "particle": w.particle,
               "split": [list(p) for p in w.split], "validated": ok,
               "w1": io.rsv_to_json(w.w1), "w2": io.rsv_to_json(w.w2)}
    settings.report(payload, f"jpwitness: {w.construction}, validated {str(ok).lower()}",
                    EXIT_OK if ok else EXIT_FALSE)


@main.command("decompose")
@input_file
@samples_option
@structured_option
@pass_settings
@handled
def cmd_decompose(settings, file, samples, structured):
    """Split a reduced-space vector into a join of (best-effort) irreducibles."""
    v = io.parse_rsv(_read(file), settings.tol)
    parts = decompose_irreducibles(v, _budget(settings, samples, structured))
    payload = {"parts": [{"vector": io.rsv_to_json(p.vector),
                          "verdict": io.verdict_to_json(p.verdict, v.shape)} for p in parts]}
    lines = [f"decompose: {len(parts)} part(s)"]
    lines += [f"  ranks {p.vector.ranks}: {p.verdict.status}" for p in parts]
    settings.report(payload, "\n".join(lines))


# -- Hamiltonians ---------------------------------------------------------

def _load_hamiltonian(file, tol):
    shape, k, kers = io.parse_hamiltonian_parts(_read(file), tol)
    return shape, k, kers


@main.command("ground")
@input_file
@out_option
@pass_settings
@handled
def cmd_ground(settings, file, out):
    """Ground space of a projector-form Hamiltonian FILE (may be zero)."""
    shape, k, kers = _load_hamiltonian(file, settings.tol)
    if any(ker.rank == 0 for ker in kers):
        gs = Subspace.zero(shape.total_dim, settings.tol)
    else:
        gs = ground_space(LocalHamiltonian(shape, k, tuple(kers)))
    _emit(io.subspace_to_json(shape, gs), out)


@main.command("ff")
@input_file
@pass_settings
@handled
def cmd_ff(settings, file):
    """Exit 0 if the terms of FILE share a common ground state, else 1."""
    shape, k, kers = _load_hamiltonian(file, settings.tol)
    if any(ker.rank == 0 for ker in kers):
        rank = 0
    else:
        rank = ground_space(LocalHamiltonian(shape, k, tuple(kers))).rank
    result = rank >= 1
    settings.report({"frustration_free": result, "ground_rank": rank},
                    f"frustration-free: {str(result).lower()} (ground rank {rank})",
                    EXIT_OK if result else EXIT_FALSE)


@main.command("meet")
@click.argument("first", type=click.File("r"))
@click.argument("second", type=click.File("r"))
@out_option
@pass_settings
@handled
def cmd_meet(settings, first, second, out):
    """Componentwise kernel intersection of two Hamiltonians."""
    h1 = io.parse_hamiltonian(_read(first), settings.tol)
    h2 = io.parse_hamiltonian(_read(second), settings.tol)
    _emit(io.hamiltonian_to_json(meet(h1, h2)), out)


def _ground_verdict(settings, fn, file, k, samples, structured, label):
    shape, s = _load_subspace(file, settings.tol)
    verdict = fn(s, shape, k, _budget(settings, samples, structured))
    _verdict_report(settings, verdict, shape, label)


@main.command("minimal")
@input_file
@k_option
@samples_option
@structured_option
@pass_settings
@handled
def cmd_minimal(settings, file, k, samples, structured):
    """Whether a ground space contains no proper ground space."""
    _ground_verdict(settings, is_minimal_ground_space, file, k, samples, structured,
                    "minimal")


@main.command("irrgs")
@input_file
@k_option
@samples_option
@structured_option
@pass_settings
@handled
def cmd_irrgs(settings, file, k, samples, structured):
    """Whether a ground space is a sum of two proper ground spaces."""
    _ground_verdict(settings, is_irreducible_ground_space, file, k, samples, structured,
                    "irreducible-ground-space")


# -- fixtures and self-check ---------------------------------------------

def _results_report(settings, title, results, timing):
    failed = [r for r in results if not r.passed]
    lines = []
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}"
        if timing:
            line += f" [{r.seconds:.2f}s]"
        lines.append(line)
    lines.append(f"{title}: {len(results) - len(failed)}/{len(results)} PASS")
    entries = []
    for r in results:
        e = {"name": r.name, "passed": r.passed, "detail": r.detail}
        if timing:
            e["seconds"] = r.seconds
        entries.append(e)
    settings.report({"suite": title, "results": entries, "passed": not failed},
                    "\n".join(lines), EXIT_FALSE if failed else EXIT_OK)


@main.command("examples")
@click.option("--suite", type=click.Choice(["paper", "toric", "all"]), default="paper",
              show_default=True, help="Worked examples, toric code, or both.")
@click.option("--timing/--no-timing", default=True, show_default=True,
              help="Include per-fixture wall time (omit for byte-identical reports).")
@pass_settings
@handled
def cmd_examples(settings, suite, timing):
    """Run the worked-example fixtures and report PASS/FAIL."""
    _results_report(settings, f"examples[{suite}]", run_suite(suite, settings.seed), timing)


@main.command("selfcheck")
@click.option("--trials", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--timing/--no-timing", default=True, show_default=True)
@pass_settings
@handled
def cmd_selfcheck(settings, trials, timing):
    """Cross-check the main algorithms against the brute-force oracles."""
    from .selfcheck import run_selfcheck

    results = run_selfcheck(trials, settings.seed)
    click.echo(f"kernel backend: {BACKEND}", err=True)
    _results_report(settings, "selfcheck", results, timing)


if __name__ == "__main__":  # pragma: no cover
    main()

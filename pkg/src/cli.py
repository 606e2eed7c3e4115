"""
Command-line interface for bounded-orbits.

Every command writes its artifact (JSON or CSV) to stdout or ``--out`` and its
diagnostics to stderr. Exit codes: 0 success or certificate holds, 1 violated
or failing suite, 2 invalid input, 3 candidate budget exceeded.
"""

import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Tuple

import click
from pydantic import ValidationError

from src.models.diophantine import Weight
from src.models.enums import StrategyMode
from src.models.errors import BudgetExceededError, InternalInvariantError
from src.models.geometry import Ball
from src.models.rational import format_rational, parse_rational
from src.models.lattice import UnipotentParams
from src.utils.config_loader import get_config, load_run_config
from src.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# Parameter types
# ---------------------------------------------------------------------------


class RationalType(click.ParamType):
    """Exact rational such as 3/4, 2 or 1.25."""

    name = "rational"

    def convert(self, value: Any, param, ctx) -> Fraction:
        try:
            return parse_rational(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class PointType(click.ParamType):
    """Comma-separated rationals."""

    name = "point"

    def convert(self, value: Any, param, ctx) -> Tuple[Fraction, ...]:
        if isinstance(value, tuple):
            return value
        try:
            return tuple(parse_rational(part) for part in str(value).split(","))
        except ValueError as e:
            self.fail(str(e), param, ctx)


class WeightType(click.ParamType):
    """Weight given as d:lambda:mu."""

    name = "weight"

    def convert(self, value: Any, param, ctx) -> Weight:
        if isinstance(value, Weight):
            return value
        try:
            return Weight.parse(value)
        except (ValueError, ValidationError) as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalType()
POINT = PointType()
WEIGHT = WeightType()

weight_option = click.option(
    "--weight", "w", type=WEIGHT, default="2:1/2:1/2", show_default=True, help="Weight d:lambda:mu"
)
out_option = click.option("--out", "-o", type=click.Path(dir_okay=False), help="Write the artifact here")


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")
        click.secho(f"Wrote {out}", fg="green", err=True)
    else:
        click.echo(text)


def _emit_json(data: Any, out: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2), out)


def _fail(message: str, code: int) -> None:
    click.secho(f"✗ Error: {message}", fg="red", bold=True, err=True)
    sys.exit(code)


def _check_dims(point: Tuple[Fraction, ...], w: Weight, what: str = "point") -> None:
    if len(point) != 2 * w.d - 1:
        raise click.BadParameter(f"{what} needs {2 * w.d - 1} coordinates for d={w.d}, got {len(point)}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
@click.version_option(version="0.1.0")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="Path to config.yaml")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str]):
    """
    bounded-orbits - hyperplane games, badly approximable certificates and orbit systoles.

    Examples:
        bounded-orbits params --beta 1/3 --gamma 1 --center 0,0,0 --sigma 1/2
        bounded-orbits certify --point 1/3,1/2,0 --epsilon 1/10 --max-q 20
        bounded-orbits verify-lemmas --suite height-bounds --trials 200
    """
    try:
        config = get_config(config_path)
    except (FileNotFoundError, ValueError) as e:
        _fail(str(e), EXIT_INVALID)
    setup_logging(config.model_dump())
    ctx.obj = config


@cli.command()
@weight_option
@click.option("--beta", type=RATIONAL, required=True, help="Game parameter in (0, 1)")
@click.option("--gamma", type=RATIONAL, default="1", show_default=True, help="Potential exponent")
@click.option("--center", type=POINT, required=True, help="Root ball center x,y,z")
@click.option("--sigma", type=RATIONAL, required=True, help="Square root of the root radius")
@click.option(
    "--mode", type=click.Choice([m.value for m in StrategyMode]), default="paper", show_default=True
)
@click.option("--R", "R", type=int, help="Level ratio (relaxed mode)")
@click.option("--epsilon", type=RATIONAL, help="Diophantine scale (relaxed mode)")
@out_option
def params(w, beta, gamma, center, sigma, mode, R, epsilon, out):
    """
    Derive the strategy constants R and epsilon for a root ball.

    Examples:
        bounded-orbits params --beta 1/3 --gamma 1 --center 0,0,0 --sigma 1/2
        bounded-orbits params --beta 1/2 --gamma 2 --center 0,0,0 --sigma 1/2 \\
            --mode relaxed --R 16 --epsilon 1/100000
    """
    from src.tools.subdivisions import derive_params

    _check_dims(center, w, "center")
    try:
        root = Ball.from_center(center, sigma, d=w.d)
        derived = derive_params(root, beta, gamma, w.d, StrategyMode(mode), R=R, epsilon=epsilon)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_INVALID)
    _emit_json(derived.model_dump(mode="json"), out)


@cli.command()
@weight_option
@click.option("--point", type=POINT, required=True, help="Point x,y,z")
@click.option("--epsilon", type=RATIONAL, required=True, help="Positive epsilon")
@click.option("--max-q", type=click.IntRange(min=1), required=True, help="Denominator bound Q")
@click.option("--budget", type=click.IntRange(min=1), help="Candidate cap")
@out_option
@click.pass_obj
def certify(config, w, point, epsilon, max_q, budget, out):
    """
    Check that no rational point with q <= Q approximates POINT with quality below epsilon.

    Exit code 0 when the certificate holds, 1 with a violating witness, 3 when
    the candidate budget runs out.
    """
    from src.tools.diophantine import bad_certificate

    _check_dims(point, w)
    budget = budget or config.diophantine.candidate_budget
    try:
        result = bad_certificate(point, w, epsilon, max_q, budget)
    except BudgetExceededError as e:
        _fail(str(e), EXIT_BUDGET)
    except ValueError as e:
        _fail(str(e), EXIT_INVALID)

    data = {
        "status": result.status.value,
        "epsilon": format_rational(result.epsilon),
        "max_q": result.max_q,
        "candidates": result.candidates,
        "witness": None,
    }
    if result.witness is not None:
        witness = result.witness
        data["witness"] = {
            "p": witness.point.p,
            "s": witness.point.s,
            "q": witness.point.q,
            "term_y": f"{format_rational(witness.term_y_coefficient)} * q^({witness.term_y_exponent})",
            "term_x": f"{format_rational(witness.term_x_coefficient)} * q^({witness.term_x_exponent})",
        }
    _emit_json(data, out)
    sys.exit(EXIT_OK if result.holds else EXIT_VIOLATED)


@cli.command()
@weight_option
@click.option("--point", type=POINT, required=True, help="Unipotent parameters x,y,z")
@click.option("--horizon", type=RATIONAL, help="Last time of the grid")
@click.option("--samples", type=click.IntRange(min=2), help="Number of grid times")
@click.option("--precision", type=click.IntRange(min=32), help="Starting precision in bits")
@click.option("--floor", "floor_", type=RATIONAL, help="Escape floor for the verdict")
@out_option
@click.pass_obj
def orbit(config, w, point, horizon, samples, precision, floor_, out):
    """
    Systoles of g_t u^-1 Z^(d+1) along an equally spaced time grid, as CSV.

    Columns: t, systole, the shortest vector's coordinates, bits. The
    boundedness verdict goes to stderr.
    """
    from src.models.errors import PrecisionExhaustedError, SingularBasisError
    from src.tools.lattice import orbit_verdict, time_grid

    _check_dims(point, w)
    lattice = config.lattice
    times = time_grid(horizon if horizon is not None else lattice.horizon, samples or lattice.samples)
    floor_value = floor_ if floor_ is not None else lattice.floor
    try:
        trace, verdict = orbit_verdict(
            UnipotentParams.from_point(point),
            w,
            times,
            float(floor_value),
            precision or lattice.precision_bits,
            lattice.max_precision_bits,
        )
    except (SingularBasisError, PrecisionExhaustedError) as e:
        _fail(str(e), EXIT_VIOLATED)
    except ValueError as e:
        _fail(str(e), EXIT_INVALID)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "systole"] + [f"v{i}" for i in range(w.d + 1)] + ["bits"])
    for p in trace.points:
        writer.writerow([repr(p.t), p.length_decimal] + [repr(v) for v in p.vector] + [trace.precision_bits])
    _emit(buffer.getvalue(), out)

    message = f"verdict: {verdict.status.value} (floor {floor_value}, min systole {verdict.min_length})"
    if verdict.time is not None:
        message += f", escaped at t={verdict.time}"
    click.echo(message, err=True)


@cli.command()
@weight_option
@click.option("--center", type=POINT, required=True, help="Ball center x,y,z")
@click.option("--sigma", type=RATIONAL, required=True, help="Square root of the ball radius")
@click.option("--p", "p_raw", type=POINT, required=True, help="Numerators p_1,...,p_(d-1)")
@click.option("--s", "s_raw", type=int, required=True, help="Numerator s")
@click.option("--q", "q_raw", type=int, required=True, help="Denominator q")
@out_option
def attach(w, center, sigma, p_raw, s_raw, q_raw, out):
    """
    Dual vector, height, hyperplane and line attached to (B, P).

    Example:
        bounded-orbits attach --center 0,0,0 --sigma 1/10 --p 1 --s 1 --q 2
    """
    from src.tools.attachments import attach_line, attached_hyperplane, dual_search
    from src.tools.diophantine import reduce_point

    _check_dims(center, w, "center")
    if len(p_raw) != w.d - 1 or any(v.denominator != 1 for v in p_raw):
        raise click.BadParameter(f"--p needs {w.d - 1} integers", param_hint="--p")
    try:
        ball = Ball.from_center(center, sigma, d=w.d)
        P = reduce_point([int(v) for v in p_raw], s_raw, q_raw)
        dual = dual_search(ball, P, w)
        hyperplane = attached_hyperplane(ball, P, w, dual)
        line = attach_line(ball, P, w, dual)
    except InternalInvariantError as e:
        _fail(str(e), EXIT_VIOLATED)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_INVALID)

    _emit_json(
        {
            "a": dual.a,
            "b": dual.b,
            "xi": format_rational(dual.xi),
            "H": format_rational(P.q * dual.xi),
            "C": hyperplane.C,
            "v": [format_rational(v) for v in line.v],
            "u": format_rational(line.u),
            "c": line.c,
        },
        out,
    )


@cli.command()
@click.argument("game_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, help="Seed for random players")
@click.option("--max-turns", type=click.IntRange(min=1), help="Turn limit")
@click.option("--budget", type=click.IntRange(min=1), help="Candidate cap")
@click.option("--save", is_flag=True, help="Save the trace with the checkpoint manager")
@out_option
@click.pass_obj
def play(config, game_file, seed, max_turns, budget, save, out):
    """
    Play the game described by GAME_FILE and print the trace as JSON.

    Examples:
        bounded-orbits play game.yaml
        bounded-orbits play game.yaml --seed 7 --save
    """
    from src.agents.alice_agent import build_alice
    from src.agents.bob_agent import build_bob
    from src.tools.subdivisions import derive_params
    from src.utils.checkpoint_manager import CheckpointManager
    from src.workflow import GameRunner

    try:
        run = load_run_config(game_file, {"seed": seed, "max_turns": max_turns})
        game = run.game_config(config.game.max_turns, config.game.stall_turns, config.strategy.resolution)
        root = run.root()
        budget = budget or config.strategy.candidate_budget
        seed = run.seed if run.seed is not None else config.game.default_seed

        strategy = None
        if run.alice == "paper":
            strategy = derive_params(
                root, run.beta, run.gamma or 1, run.weight.d, run.mode, R=run.R, epsilon=run.epsilon
            )
        alice = build_alice(
            run.alice, strategy, run.weight, game.resolution, seed, budget, config.strategy.grid_cap
        )
        bob = build_bob(run.bob, seed, run.target)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_INVALID)

    manager = CheckpointManager(config.traces.save_dir) if save or config.traces.enabled else None
    runner = GameRunner(alice, bob, game, strategy, run.weight, budget, manager)
    epsilon = run.epsilon if run.epsilon is not None else Fraction(1, 100)
    try:
        trace = runner.run(
            root=root,
            run_id=run.run_id,
            max_q=run.max_q or config.strategy.max_q,
            epsilon=epsilon if strategy is None else None,
        )
    except InternalInvariantError as e:
        _fail(f"internal invariant violated: {e}", EXIT_VIOLATED)
    except BudgetExceededError as e:
        _fail(str(e), EXIT_BUDGET)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_INVALID)

    _emit_json(trace.model_dump(mode="json"), out)
    click.echo(json.dumps(trace.get_summary()), err=True)


@cli.command("verify-lemmas")
@click.option("--suite", default="all", show_default=True, help="Suite name or label, or 'all'")
@click.option(
    "--trials",
    "--budget",
    "trials",
    type=click.IntRange(min=1),
    default=200,
    show_default=True,
    help="Trials per suite",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--progress/--no-progress", default=False, help="Show a progress bar on stderr")
@out_option
def verify_lemmas(suite, trials, seed, progress, out):
    """
    Run randomized verification suites and print pass/fail counts.

    Exits with 1 when any suite records a failure.

    Examples:
        bounded-orbits verify-lemmas --suite dual-existence --trials 1000
        bounded-orbits verify-lemmas --suite L:BPV --budget 10000
        bounded-orbits verify-lemmas --suite all --seed 3
    """
    from src.verification import SUITES, resolve_suite, run_suite

    try:
        names = list(SUITES) if suite == "all" else [resolve_suite(suite)]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--suite") from e

    try:
        reports = [run_suite(name, trials, seed, progress) for name in names]
    except BudgetExceededError as e:
        _fail(str(e), EXIT_BUDGET)

    _emit_json([r.model_dump() for r in reports], out)
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        click.secho(f"Failing suites: {', '.join(failed)}", fg="red", err=True)
        sys.exit(EXIT_VIOLATED)


def main():
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()

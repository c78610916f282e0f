"""Command-line surface.

Exit status: 0 success (verdict true), 1 verdict false, 2 input error,
3 resource exhaustion or an inconclusive bounded check.
"""
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional, Tuple

import click

from .automata import accepts, dumps, loads, simulate, synthesize_model, to_equations
from .automata.automaton import LambdaAutomaton
from .bases import basis_for, is_disjunctive, selftest, yoneda_representation
from .bases.yoneda import divisible
from .config import Caps, default_caps, default_settings
from .errors import (ArityError, CoverSearchError, FormulaError, MucoalError, NonMonotoneError, ResourceError,
                     UnknownLiftingError, UnmappedVariableError, UnsupportedFunctorError)
from .frontend import compile_formula, dumps_model, load_model, model_schema, parse, satisfies
from .functors import Functor, parse_functor
from .semantics import one_step_equivalent
from .syntax import render
from .transforms import InterpolationRequest, is_monotone, lyndon_automaton, one_step_lyndon, uniform_interpolant

logger = logging.getLogger(__name__)

OK, NEGATIVE, USAGE, INCONCLUSIVE = 0, 1, 2, 3

_BASIS_FUNCTORS = {
    'powerset': 'powerset',
    'bag': 'bag',
    'sum': 'sum(powerset,powerset)',
    'prod': 'prod(powerset,identity)',
    'comp': 'comp(powerset,identity)',
}


@contextmanager
def _exit_codes():
    try:
        yield
    except NonMonotoneError as exc:
        click.echo(str(exc), err=True)
        sys.exit(NEGATIVE)
    except (ResourceError, CoverSearchError) as exc:
        click.echo('inconclusive: {}'.format(exc), err=True)
        sys.exit(INCONCLUSIVE)
    except (FormulaError, UnsupportedFunctorError, UnknownLiftingError, ArityError, UnmappedVariableError,
            NotImplementedError, OSError) as exc:
        click.echo('error: {}'.format(exc), err=True)
        sys.exit(USAGE)
    except MucoalError as exc:
        click.echo('error: {}'.format(exc), err=True)
        sys.exit(USAGE)


def _caps(ctx: click.Context) -> Caps:
    return ctx.obj['caps']


def _functor(ctx: click.Context) -> Functor:
    return parse_functor(ctx.obj['functor'])


def _load_target(text: str, functor: Functor, caps: Caps) -> Tuple[LambdaAutomaton, Optional[str]]:
    """An automaton from an automaton file, a file holding a formula, or a formula given inline."""
    path = Path(text)
    source = path.read_text() if path.is_file() else text
    if source.lstrip().startswith('functor'):
        return loads(source), None
    compiled = compile_formula(parse(source), functor, caps=caps)
    if compiled.rewritten:
        click.echo('note: unguarded variables were rewritten before compiling', err=True)
    return compiled.automaton, render(compiled.normalized)


def _echo_bound(bounded: bool, what: str) -> None:
    if bounded:
        click.echo('bound: {}'.format(what))
    else:
        click.echo('bound: none (exact)')


@click.group()
@click.option('-v', '--verbose', count=True, help='Log INFO with -v, DEBUG with -vv.')
@click.option('-f', '--functor', default=None, help='Functor expression, e.g. `powerset` or `sum(powerset,identity)`.')
@click.option('--cap', 'cap_values', multiple=True, metavar='NAME=VALUE', help='Override a resource cap.')
@click.option('--bound', type=int, default=None, help='Largest carrier for model enumeration.')
@click.option('--workers', type=int, default=None, help='Worker processes for batch checks.')
@click.pass_context
def cli(ctx: click.Context, verbose: int, functor: Optional[str], cap_values: Tuple[str, ...], bound: Optional[int],
        workers: Optional[int]):
    """Coalgebraic fixpoint logic: automata, simulation, Lyndon and interpolation."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    changes = {}
    for item in cap_values:
        name, sep, value = item.partition('=')
        if not sep or not value.strip().isdigit():
            raise click.BadParameter('expected NAME=VALUE, got `{}`'.format(item), param_hint='--cap')
        changes[name.strip()] = int(value)
    try:
        caps = default_caps(**changes)
    except (TypeError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint='--cap')
    settings = default_settings
    ctx.obj = {
        'functor': functor or settings.functor,
        'caps': caps,
        'bound': bound or settings.bound,
        'workers': workers or settings.workers,
        'mode': settings.mode,
    }
    if ctx.obj['workers'] <= 0 or ctx.obj['bound'] <= 0:
        raise click.BadParameter('`--bound` and `--workers` must be positive')


def _check_one(job: Tuple[str, str, Caps]) -> Tuple[str, bool, bool]:
    formula_text, model_path, caps = job
    model = load_model(model_path)
    formula = parse(formula_text)
    compiled = compile_formula(formula, model.functor, caps=caps)
    return model_path, accepts(compiled.automaton, model, caps), satisfies(formula, model)


@cli.command()
@click.argument('formula')
@click.argument('models', nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def check(ctx: click.Context, formula: str, models: Tuple[str, ...]):
    """Model-check FORMULA on MODELS with both the acceptance game and the fixpoint evaluator."""
    caps = _caps(ctx)
    jobs = [(formula, m, caps) for m in models]
    with _exit_codes():
        if ctx.obj['workers'] == 1 or len(jobs) == 1:
            results = [_check_one(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=ctx.obj['workers']) as pool:
                results = list(pool.map(_check_one, jobs))
    status = OK
    for path, game, fixpoint in results:
        verdict = '{} (game) / {} (fixpoint)'.format('accepted' if game else 'rejected', str(fixpoint).lower())
        if game != fixpoint:
            click.echo('{}: {}  DISAGREEMENT, this is a bug'.format(path, verdict))
            status = INCONCLUSIVE
            continue
        click.echo('{}: {}'.format(path, verdict))
        if not game and status == OK:
            status = NEGATIVE
    _echo_bound(False, '')
    ctx.exit(status)


@cli.command('simulate')
@click.argument('target')
@click.option('--equations', is_flag=True, help='Print the equation system instead of the automaton text.')
@click.pass_context
def simulate_cmd(ctx: click.Context, target: str, equations: bool):
    """Emit an equivalent disjunctive automaton for TARGET (automaton file or formula)."""
    caps = _caps(ctx)
    with _exit_codes():
        aut, _ = _load_target(target, _functor(ctx), caps)
        out = simulate(aut, basis_for(aut.functor), caps)
    click.echo(to_equations(out) if equations else dumps(out), nl=equations)
    click.echo('# {} states simulated by {} states'.format(len(aut), len(out)), err=True)


@cli.command()
@click.argument('formula')
@click.option('--keep', required=True, help='Comma-separated letters to keep.')
@click.option('--consequence', 'consequences', multiple=True, help='Consequence to certify against the interpolant.')
@click.pass_context
def interpolate(ctx: click.Context, formula: str, keep: str, consequences: Tuple[str, ...]):
    """Uniform interpolant of FORMULA over the kept letters."""
    caps = _caps(ctx)
    with _exit_codes():
        req = InterpolationRequest(parse(formula), frozenset(x.strip() for x in keep.split(',') if x.strip()),
                                   functor=_functor(ctx), consequences=[parse(c) for c in consequences],
                                   bound=ctx.obj['bound'])
        result = uniform_interpolant(req, caps)
    click.echo(result.equations)
    for cert in result.certificates:
        state = 'n/a' if cert.holds is None else 'holds' if cert.holds else 'FAILS'
        click.echo('certificate: {}: {}'.format(cert.claim, state))
    _echo_bound(True, 'models with at most {} points'.format(req.bound))
    ctx.exit(OK if result.certified else NEGATIVE)


@cli.command()
@click.argument('formula')
@click.option('--var', 'letter', required=True, help='Letter to make positive.')
@click.option('--one-step', is_flag=True, help='Treat FORMULA as a one-step formula.')
@click.pass_context
def lyndon(ctx: click.Context, formula: str, letter: str, one_step: bool):
    """Lyndon transform of FORMULA in the letter given by --var."""
    caps = _caps(ctx)
    with _exit_codes():
        functor = _functor(ctx)
        if one_step:
            result = one_step_lyndon(parse(formula), letter, functor, caps=caps)
            click.echo(render(result.formula))
            _echo_bound(result.bounded, 'one-step models with at most 2 points')
            ctx.exit(OK if result.verified else INCONCLUSIVE)
        aut, _ = _load_target(formula, functor, caps)
        out = lyndon_automaton(simulate(aut, basis_for(aut.functor), caps), letter)
    click.echo(dumps(out), nl=False)


@cli.command()
@click.argument('formula')
@click.option('--var', 'letter', required=True, help='Letter to test.')
@click.option('--mode', type=click.Choice(['enum', 'empty', 'oracle']), default=None)
@click.pass_context
def monotone(ctx: click.Context, formula: str, letter: str, mode: Optional[str]):
    """Decide whether FORMULA is monotone in the letter given by --var."""
    caps = _caps(ctx)
    mode = mode or ctx.obj['mode']
    with _exit_codes():
        aut, _ = _load_target(formula, _functor(ctx), caps)
        verdict = is_monotone(aut, letter, mode, bound=ctx.obj['bound'], caps=caps)
    click.echo('{}monotone in {} ({})'.format('' if verdict.monotone else 'not ', letter, mode))
    if verdict.counterexample is not None:
        smaller, larger = verdict.counterexample
        click.echo('accepted model:\n{}'.format(smaller))
        if larger is not None:
            click.echo('rejected after enlarging {}:\n{}'.format(letter, larger))
    _echo_bound(verdict.bounded, 'models with at most {} points'.format(ctx.obj['bound']))
    ctx.exit(OK if verdict.monotone else NEGATIVE)


@cli.command()
@click.argument('target')
@click.pass_context
def synth(ctx: click.Context, target: str):
    """A model of TARGET with at most as many points as states, or `empty`."""
    caps = _caps(ctx)
    with _exit_codes():
        aut, _ = _load_target(target, _functor(ctx), caps)
        result = synthesize_model(simulate(aut, basis_for(aut.functor), caps), caps)
    if result.model is None:
        click.echo('empty')
    else:
        click.echo(dumps_model(result.model), nl=False)
    _echo_bound(result.bounded, 'multiplicities up to {}'.format(caps.multiplicity))
    ctx.exit(OK if result else NEGATIVE)


@cli.group()
def onestep():
    """One-step formula tools."""


@onestep.command('disjunctive')
@click.argument('alpha')
@click.pass_context
def onestep_disjunctive(ctx: click.Context, alpha: str):
    caps = _caps(ctx)
    with _exit_codes():
        verdict = is_disjunctive(parse(alpha), _functor(ctx), caps, bound=2)
    click.echo(verdict.status)
    if verdict.counterexample is not None:
        click.echo('model: {}'.format(verdict.counterexample))
    _echo_bound(verdict.bounded, 'one-step models with at most 2 points')
    ctx.exit({'disjunctive': OK, 'counterexample': NEGATIVE}.get(verdict.status, INCONCLUSIVE))


@onestep.command('equiv')
@click.argument('alpha')
@click.argument('beta')
@click.pass_context
def onestep_equiv(ctx: click.Context, alpha: str, beta: str):
    caps = _caps(ctx)
    with _exit_codes():
        result = one_step_equivalent(parse(alpha), parse(beta), _functor(ctx), caps=caps)
    click.echo('equivalent' if result.equivalent else 'not equivalent')
    if result.counterexample is not None:
        click.echo('model: {}'.format(result.counterexample))
    _echo_bound(result.bounded, 'one-step models with at most 2 points')
    ctx.exit(OK if result.equivalent else NEGATIVE)


@onestep.command('normalform')
@click.argument('alpha')
@click.pass_context
def onestep_normalform(ctx: click.Context, alpha: str):
    with _exit_codes():
        basis = basis_for(_functor(ctx))
        click.echo(render(basis.normal_form(parse(alpha))))


@onestep.command('yoneda')
@click.argument('alpha')
@click.pass_context
def onestep_yoneda(ctx: click.Context, alpha: str):
    caps = _caps(ctx)
    with _exit_codes():
        functor = _functor(ctx)
        formula = parse(alpha)
        representation = yoneda_representation(formula, functor, caps)
        result = divisible(formula, functor, caps)
    click.echo('representation size: {}'.format(len(representation)))
    click.echo('divisible' if result.divisible else 'not divisible')
    ctx.exit(OK if result.divisible else NEGATIVE)


@cli.command()
@click.argument('kind', type=click.Choice(sorted(_BASIS_FUNCTORS)))
@click.argument('action', type=click.Choice(['selftest']))
@click.pass_context
def basis(ctx: click.Context, kind: str, action: str):
    """Re-verify the disjunctive basis of KIND on small variable sets."""
    with _exit_codes():
        records = selftest(basis_for(parse_functor(_BASIS_FUNCTORS[kind])), caps=_caps(ctx))
    failed = 0
    for rec in records:
        click.echo('{:<12} {:<5} {}{}'.format(rec.law, 'ok' if rec.ok else 'FAIL', rec.formula,
                                              ' (bounded)' if rec.bounded else ''))
        failed += not rec.ok
    click.echo('{} laws checked over variables a, b; {} failed'.format(len(records), failed))
    ctx.exit(OK if failed == 0 else NEGATIVE)


@cli.command('model-schema')
def model_schema_cmd():
    """Print the JSON schema of model files."""
    click.echo(json.dumps(model_schema(), indent=2))


def main(argv: Optional[List[str]] = None):
    cli.main(args=argv, prog_name='mucoal')


if __name__ == '__main__':
    main()

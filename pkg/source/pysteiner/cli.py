"""
Command-line front end of PySteiner

    steinervol [options] COMMAND [INPUT | PARAMS...]

COMMAND is one of gen, volume-fn, inradius, rank, equiangular, roof and
verify.  The input polytope is a JSON file ("-" for stdin), or a generated
shape selected with --gen KIND, whose parameters are then given as
the positional arguments.  Results are written to stdout as JSON; errors
are written to stderr as {"error": kind, "message": text}, with exit code 2
for invalid input and 3 for numerical failures.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
import sys
import json
import optparse
from io import StringIO
from contextlib import redirect_stdout

# Third-party imports
import numpy

# PySteiner imports
from pysteiner.specification import create_specifier, read_specifier
from pysteiner.geometry import (load_polytope, dump_polytope, inradius,
                                absolute_rank)
from pysteiner.steiner import create_engine, inner_volume_function
from pysteiner.equiangular import (check_dimensionwise_equiangular, NotEquiangular,
                                   equiangular_volume_polynomial)
from pysteiner.shapes import build_shape, make_roof
from pysteiner.oracle import create_verifier
from pysteiner.errors import NumericalFailureError, UsageError, error_kind

COMMANDS = ['gen', 'volume-fn', 'inradius', 'rank', 'equiangular', 'roof', 'verify']


#==============================================================================
# Command-line Interface
#==============================================================================
_PARSER_ = optparse.OptionParser(
    usage='%prog [options] COMMAND [INPUT | PARAMS...]',
    description='Compute the inner-neighborhood volume function V_P(r) of a '
                'convex polytope, and related quantities.  COMMAND is one of: '
                + ', '.join(COMMANDS))
_PARSER_.add_option('-g', '--gen', default=None,
                    help=('Generate the input shape of the given kind (rect, '
                          'cube, square, segment, simplex, regular-simplex, '
                          'polygon, pyramid, cut-dodecahedron, '
                          'multiphase-pentagon, rank-class, roof-of, '
                          'iterated-roof, custom); positional arguments '
                          'are its parameters'))
_PARSER_.add_option('-w', '--window-margin', default=None, type='float',
                    help=('Fraction of the inradius added to the engine time '
                          'window [default: tolerance file value, or 0.1]'))
_PARSER_.add_option('-c', '--emit-csv', default=None,
                    help='Write r,V,W samples on [0, g] to this CSV file')
_PARSER_.add_option('-n', '--samples', default=256, type='int',
                    help='Number of CSV samples [default: 256]')
_PARSER_.add_option('-t', '--tolerances', default=None,
                    help='JSON file of tolerance overrides')
_PARSER_.add_option('-s', '--seed', default=0, type='int',
                    help='Seed of the Monte-Carlo oracle [default: 0]')
_PARSER_.add_option('-m', '--mc-samples', default=10 ** 6, type='int',
                    help='Monte-Carlo samples per radius [default: 1000000]')
_PARSER_.add_option('-v', '--verbosity', default=0, type='int',
                    help='Verbosity level of diagnostic output on stderr [default: 0]')
_PARSER_.add_option('-p', '--parallel', default=False, action='store_true',
                    help='Run the Monte-Carlo oracle in parallel (requires mpi4py)')


def cli(argv=None):
    """
    Parse the command-line arguments

    Parameters:
        argv (list): The argument list (without the program name)

    Returns:
        tuple: (options, arguments), the first argument being the command
    """
    opts, args = _PARSER_.parse_args(argv)
    if len(args) == 0:
        err_msg = 'A command is required, one of: {0}'.format(', '.join(COMMANDS))
        raise UsageError(err_msg)
    if args[0] not in COMMANDS:
        err_msg = 'Unknown command {0!r}, must be one of: {1}'.format(
            args[0], ', '.join(COMMANDS))
        raise UsageError(err_msg)
    return opts, args


def _specifier(opts):
    if opts.tolerances is not None:
        spec = read_specifier(opts.tolerances)
    else:
        spec = create_specifier()
    if opts.window_margin is not None:
        spec.window_margin = opts.window_margin
    spec.validate()
    return spec


def _input_polytope(opts, params, spec):
    if opts.gen is not None:
        return build_shape(opts.gen, params, specifier=spec)
    if len(params) != 1:
        err_msg = 'Exactly one input file (or "-") is required without --gen'
        raise UsageError(err_msg)
    if params[0] == '-':
        return load_polytope(sys.stdin, specifier=spec)
    with open(params[0]) as fobj:
        return load_polytope(fobj, specifier=spec)


def _write_csv(fname, inner, samples):
    radii = numpy.linspace(0.0, inner.g, samples)
    with open(fname, 'w', newline='\n') as fobj:
        fobj.write('r,V,W\n')
        for r in radii:
            fobj.write('%.17g,%.17g,%.17g\n' % (r, inner.V(r), inner.W(r)))


def _emit(result, stdout):
    json.dump(result, stdout)
    stdout.write('\n')


#==============================================================================
# Commands
#==============================================================================
def run_command(command, polytope, opts, spec, stdout):
    """
    Run one command on a polytope and write its result

    Returns:
        int: The exit code
    """
    if command == 'gen':
        dump_polytope(polytope, stdout)
        stdout.write('\n')
    elif command == 'roof':
        dump_polytope(make_roof(polytope, specifier=spec), stdout)
        stdout.write('\n')
    elif command == 'inradius':
        _emit(inradius(polytope, specifier=spec).g, stdout)
    elif command == 'rank':
        _emit(absolute_rank(polytope.normals, specifier=spec), stdout)
    elif command == 'volume-fn':
        engine = create_engine(specifier=spec, verbosity=opts.verbosity)
        inner = inner_volume_function(polytope, specifier=spec, engine=engine)
        if opts.verbosity > 0:
            engine.print_diagnostics()
        if opts.emit_csv is not None:
            _write_csv(opts.emit_csv, inner, opts.samples)
        _emit(inner.to_dict(), stdout)
    elif command == 'equiangular':
        profile = check_dimensionwise_equiangular(polytope, specifier=spec)
        if isinstance(profile, NotEquiangular):
            _emit({'equiangular': False, 'witness': repr(profile)}, stdout)
        else:
            _emit(equiangular_volume_polynomial(polytope, specifier=spec).to_dict(), stdout)
    elif command == 'verify':
        engine = create_engine(specifier=spec, verbosity=opts.verbosity)
        inner = inner_volume_function(polytope, specifier=spec, engine=engine)
        verifier = create_verifier(specifier=spec, serial=not opts.parallel,
                                   verbosity=opts.verbosity)
        report = verifier.verify_volume_function(polytope, inner.V, seed=opts.seed,
                                                 n=opts.mc_samples)
        if opts.verbosity > 0:
            verifier.print_diagnostics()
        _emit(report.to_dict(), stdout)
        return 0 if report.passed else 1
    return 0


#==============================================================================
# Main script function
#==============================================================================
def main(argv=None, stdout=None, stderr=None):
    """
    Run the command-line tool

    Parameters:
        argv (list): The argument list (without the program name)
        stdout (file): Stream for results (sys.stdout if None)
        stderr (file): Stream for diagnostics and errors (sys.stderr if None)

    Returns:
        int: The exit code
    """
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        opts, args = cli(argv)
        spec = _specifier(opts)
        # Verbose diagnostics print to stdout; keep it for results
        with redirect_stdout(stderr):
            polytope = _input_polytope(opts, args[1:], spec)
            buffer = StringIO()
            code = run_command(args[0], polytope, opts, spec, buffer)
        stdout.write(buffer.getvalue())
        return code
    except (numpy.linalg.LinAlgError, ArithmeticError, RuntimeError) as err:
        if not isinstance(err, NumericalFailureError):
            err = NumericalFailureError('{0}: {1}'.format(type(err).__name__, err))
        return _report(err, 3, stderr)
    except (ValueError, KeyError, IOError) as err:
        return _report(err, 2, stderr)


def _report(err, code, stderr):
    json.dump({'error': error_kind(err), 'message': str(err)}, stderr)
    stderr.write('\n')
    return code


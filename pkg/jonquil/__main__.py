import os
import sys
import logging
import argparse

from .commands import COMMANDS, execute, load_config
from .errors import ResourceExhausted, VerificationError


def parseargs(argv=None):
    parser = argparse.ArgumentParser(
        'jonquil',
        description='Degrees, growth and fixed points of plane Cremona maps')
    parser.add_argument('command', choices=list(COMMANDS),
                        help="""What to compute.""")
    parser.add_argument('config',
                        help="""The JSON job config naming the field, the
                        generators and the parameters.""")
    parser.add_argument('--horizon', type=int,
                        help="""Power horizon of powers and classify, and the
                        certificate horizon of fixpoint.  This overrides
                        params.horizon in the config.""")
    parser.add_argument('--nmax', type=int,
                        help="""Largest ball radius (ball, growth) or diagonal
                        exponent (halphen).  This overrides params.nmax.""")
    parser.add_argument('--field',
                        help="""Base field: Q, Fp:p or QuadExt:d.  This
                        overrides the field in the config.""")
    parser.add_argument('--out',
                        help="""Also write the JSON report or summary to this
                        file.""")
    parser.epilog = """\
jonquil also recognizes the environment variable $JONQUIL_DEBUG which if set,
sends progress and diagnostic lines to stderr.  Exit status is 0 on success,
1 for invalid input, 2 for inconclusive results or exhausted bounds, and 3
when an internal verification fails."""
    return parser.parse_args(argv)


def main(argv=None):
    args = parseargs(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if os.environ.get('JONQUIL_DEBUG')
        else logging.WARNING,
        format='%(name)s: %(message)s')
    try:
        config = load_config(args.config).override(
            args.horizon, args.nmax, args.field)
        status = execute(args.command, config, path=args.out)
    except VerificationError as error:
        print('jonquil: internal error: {}'.format(error), file=sys.stderr)
        status = 3
    except ResourceExhausted as error:
        print('jonquil: {}'.format(error), file=sys.stderr)
        status = 2
    except (ValueError, IOError) as error:
        print('jonquil: {}'.format(error), file=sys.stderr)
        status = 1
    sys.exit(status)


if __name__ == '__main__':
    main()

"""
Family strings accepted on the command line.

    star:m,k
    path:m,k
    cat:k,mstar,delta,a,b
    gc:k,s,t,c,core=<file>

A core file is a hypergraph file (JSON or plain text) carrying a ``root``
key; plain-text files put ``root <v>`` on a line of its own.
"""
import re
from dataclasses import dataclass, field
from pathlib import Path

from rest_framework.exceptions import ValidationError

from apps.hypercore.exceptions import HypergraphError
from apps.hypercore.io import parse_document

from .exceptions import FamilyParameterError, FamilySpecError
from .serializers import RootedHypergraphSerializer
from .services import FamilyService
from .structures import CaterpillarParams, GcParams

ARITY = {
    'star': ('m', 'k'),
    'path': ('m', 'k'),
    'cat': ('k', 'mstar', 'delta', 'a', 'b'),
    'gc': ('k', 's', 't', 'c'),
}
KEYWORDS = {'gc': ('core',)}

_TOKEN = re.compile(r'[^,]+')
_ROOT_LINE = re.compile(r'^\s*root\s+(\d+)\s*$', re.MULTILINE)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    args: dict
    options: dict = field(default_factory=dict)


def parse(text):
    kind, sep, rest = text.partition(':')
    kind = kind.strip()
    if not sep:
        raise FamilySpecError('Expected "<kind>:<args>"', text, len(text))
    if kind not in ARITY:
        raise FamilySpecError(f'Unknown family {kind!r}; expected one of {", ".join(ARITY)}', text, 0)

    names = ARITY[kind]
    allowed = KEYWORDS.get(kind, ())
    args, options = {}, {}
    base = len(kind) + 1
    positional = 0
    for match in _TOKEN.finditer(rest):
        token, position = match.group(0).strip(), base + match.start()
        if '=' in token:
            key, _, value = token.partition('=')
            if key not in allowed:
                raise FamilySpecError(f'Unknown option {key!r} for {kind}', text, position)
            options[key] = value
            continue
        if positional >= len(names):
            raise FamilySpecError(f'{kind} takes {len(names)} integer arguments', text, position)
        try:
            args[names[positional]] = int(token)
        except ValueError:
            raise FamilySpecError(f'Expected an integer for {names[positional]}, got {token!r}', text, position)
        positional += 1
    if positional != len(names):
        raise FamilySpecError(
            f'{kind} takes {len(names)} integer arguments ({", ".join(names)}), got {positional}',
            text, len(text),
        )
    missing = [key for key in allowed if key not in options]
    if missing:
        raise FamilySpecError(f'{kind} needs option {missing[0]}=...', text, len(text))
    return FamilySpec(kind, args, options)


def loads_rooted(text):
    payload_text = text
    root = None
    if not text.strip().startswith('{'):
        match = _ROOT_LINE.search(text)
        if match:
            root = int(match.group(1))
            payload_text = _ROOT_LINE.sub('', text)
    payload = parse_document(payload_text)
    if root is not None:
        payload['root'] = root
    serializer = RootedHypergraphSerializer(data=payload)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise HypergraphError(f'Invalid rooted hypergraph: {exc.detail}')
    return serializer.validated_data['rooted']


def load_rooted(path):
    path = Path(path)
    try:
        return loads_rooted(path.read_text())
    except OSError as exc:
        raise HypergraphError(f'Cannot read {path}: {exc.strerror}')


def build(text):
    """Parse and construct; returns a SpineLabeledHypergraph or, for stars, a RootedHypergraph."""
    spec = parse(text)
    args = spec.args
    try:
        if spec.kind == 'star':
            return FamilyService.hyperstar(args['m'], args['k'])
        if spec.kind == 'path':
            return FamilyService.loose_path(args['m'], args['k'])
        if spec.kind == 'cat':
            return FamilyService.caterpillar(
                CaterpillarParams(args['k'], args['mstar'], args['delta'], args['a'], args['b'])
            )
        core = load_rooted(spec.options['core'])
        return FamilyService.g_c(GcParams(args['k'], args['s'], args['t'], args['c'], core))
    except FamilyParameterError:
        raise
    except HypergraphError as exc:
        raise FamilyParameterError(f'{text}: {exc}')

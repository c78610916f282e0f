"""Concrete syntax of fixpoint formulas.

    p  true  false  ~f  f & g  f | g  (f)  mu x. f  nu x. f
    <>f  []f  <2>f  [2]f  X f  !l  !~l  nabla{f, g}  count(f, g; h)

Modal operators and the `nabla`/`count` atoms take optional layer prefixes
such as `1:` or `2~:` (sum and product components). `&` binds tighter than
`|`, binders extend as far to the right as possible.
"""
import logging
import threading

import ply.lex as lex
import ply.yacc as yacc

from ..errors import FormulaSyntaxError
from ..syntax import BOT, TOP, Formula, Modal, Mu, Nu, conj, counting, disj, nabla, neg, var

logger = logging.getLogger(__name__)

reserved = {'true': 'TRUE', 'false': 'FALSE', 'mu': 'MU', 'nu': 'NU'}

tokens = ['IDENT', 'MODAL', 'LABEL', 'NABLA', 'COUNT', 'AND', 'OR', 'NOT', 'DOT', 'COMMA', 'SEMI', 'LPAREN',
          'RPAREN', 'LBRACE', 'RBRACE'] + sorted(set(reserved.values()))

t_AND = r'&'
t_OR = r'\|'
t_NOT = r'~'
t_DOT = r'\.'
t_COMMA = r','
t_SEMI = r';'
t_LPAREN = r'\('
t_RPAREN = r'\)'
t_LBRACE = r'\{'
t_RBRACE = r'\}'
t_ignore = ' \t\r'


def t_newline(t):
    r'\n+'
    t.lexer.lineno += len(t.value)


def t_NABLA(t):
    r"(?:[0-9]+~?:)*nabla(?![A-Za-z0-9_'])"
    t.value = t.value[:-len('nabla')]
    return t


def t_COUNT(t):
    r"(?:[0-9]+~?:)*count(?![A-Za-z0-9_'])"
    t.value = t.value[:-len('count')]
    return t


def t_LABEL(t):
    r"(?:[0-9]+~?:)*!~?[A-Za-z_][A-Za-z0-9_]*"
    return t


def t_MODAL(t):
    r"(?:[0-9]+~?:)*(?:<>|\[\]|<[0-9]+>|\[[0-9]+\]|X(?![A-Za-z0-9_']))"
    return t


def t_IDENT(t):
    r"[A-Za-z_][A-Za-z0-9_']*"
    t.type = reserved.get(t.value, 'IDENT')
    return t


def t_error(t):
    line, column = _position(t.lexer.lexdata, t.lexpos)
    raise FormulaSyntaxError('unexpected character {!r}'.format(t.value[0]), line, column)


def _position(text: str, offset: int):
    line = text.count('\n', 0, offset) + 1
    column = offset - (text.rfind('\n', 0, offset) + 1) + 1
    return line, column


# ---------------------------------------------------------------------------
# grammar


def p_formula(p):
    '''formula : binder
               | disjunction'''
    p[0] = p[1]


def p_binder(p):
    '''binder : MU IDENT DOT formula
              | NU IDENT DOT formula'''
    p[0] = Mu(p[2], p[4]) if p[1] == 'mu' else Nu(p[2], p[4])


def p_disjunction(p):
    '''disjunction : disjunction OR conjunction
                   | conjunction'''
    p[0] = disj(p[1], p[3]) if len(p) == 4 else p[1]


def p_conjunction(p):
    '''conjunction : conjunction AND unary
                   | unary'''
    p[0] = conj(p[1], p[3]) if len(p) == 4 else p[1]


def p_unary_not(p):
    'unary : NOT unary'
    p[0] = neg(p[2])


def p_unary_modal(p):
    'unary : MODAL unary'
    p[0] = Modal(p[1], (p[2], ))


def p_unary_modal_args(p):
    'unary : MODAL LPAREN formula COMMA list RPAREN'
    p[0] = Modal(p[1], (p[3], ) + tuple(p[5]))


def p_unary_atom(p):
    'unary : atom'
    p[0] = p[1]


def p_atom_ident(p):
    'atom : IDENT'
    p[0] = var(p[1])


def p_atom_const(p):
    '''atom : TRUE
            | FALSE'''
    p[0] = TOP if p[1] == 'true' else BOT


def p_atom_label(p):
    'atom : LABEL'
    p[0] = Modal(p[1], ())


def p_atom_group(p):
    'atom : LPAREN formula RPAREN'
    p[0] = p[2]


def p_atom_nabla(p):
    'atom : NABLA LBRACE items RBRACE'
    p[0] = nabla(p[3], p[1])


def p_atom_count(p):
    'atom : COUNT LPAREN items SEMI items RPAREN'
    p[0] = counting(p[3], p[5], p[1])


def p_items(p):
    '''items : list
             | empty'''
    p[0] = p[1]


def p_empty(p):
    'empty :'
    p[0] = []


def p_list(p):
    '''list : list COMMA formula
            | formula'''
    p[0] = p[1] + [p[3]] if len(p) == 4 else [p[1]]


class _EndOfInput(Exception):
    pass


def p_error(tok):
    if tok is None:
        raise _EndOfInput()
    line, column = _position(tok.lexer.lexdata, tok.lexpos)
    raise FormulaSyntaxError('unexpected {!r}'.format(tok.value), line, column)


_lock = threading.Lock()
_parse_lock = threading.Lock()
_tables = {}


def _build():
    with _lock:
        if not _tables:
            _tables['lexer'] = lex.lex(errorlog=lex.NullLogger())
            _tables['parser'] = yacc.yacc(debug=False, write_tables=False, errorlog=yacc.NullLogger())
            logger.debug('formula parser tables built')
    return _tables['lexer'], _tables['parser']


def parse(text: str) -> Formula:
    """Read one formula; errors carry the line and column of the offending token."""
    lexer, parser = _build()
    if not text.strip():
        raise FormulaSyntaxError('empty formula', 1, 1)
    try:
        with _parse_lock:
            return parser.parse(text, lexer=lexer.clone())
    except _EndOfInput:
        line, column = _position(text, len(text.rstrip()))
        raise FormulaSyntaxError('unexpected end of input', line, column) from None


def tokenize(text: str):
    """Token stream of `text` as (type, value) pairs."""
    lexer = _build()[0].clone()
    lexer.input(text)
    return [(tok.type, tok.value) for tok in lexer]

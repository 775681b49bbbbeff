"""Normalization of source-level conditions and time amounts.

Conditions become engine expressions over one variable per measure, named
`v<measure>`; scale comparisons reduce to the scale's order test, numeric
ones stay integer comparisons, and a bare boolean measure becomes an
equality with true.
"""

from ..errors import ConfigError, SleecError
from ..frontend import ast
from ..tockcsp import terms as T

_UNIT_TOCKS = {"second": 1, "minute": 60, "hour": 3600, "day": 86400}


def norm_time(value, unit, tock_unit_factor=1):
    """Tocks in `value` units, under a 1-second base tock scaled down by
    `tock_unit_factor` (which must divide the result exactly)."""
    raw = value * _UNIT_TOCKS[unit]
    if tock_unit_factor <= 0:
        raise ConfigError("tock unit factor must be positive")
    if raw % tock_unit_factor != 0:
        raise ConfigError(
            "%d %s(s) is not a whole number of tocks at %d second(s) per tock"
            % (value, unit, tock_unit_factor)
        )
    return raw // tock_unit_factor


def measure_var(name):
    return "v" + name


def _operand(e, wf):
    """Resolve a comparison operand to (engine expr, type tag)."""
    if isinstance(e, ast.IntLit):
        return T.ELit(e.value), "int"
    if isinstance(e, ast.BoolLit):
        return T.ELit(e.value), "bool"
    if isinstance(e, ast.NameRef):
        kind = wf.resolve(e.name)
        if kind is None:
            raise SleecError("unresolved name %r" % e.name)
        if kind[0] == "constant":
            return T.ELit(kind[1]), "int"
        if kind[0] == "scalelit":
            owner, idx = kind[1], kind[2]
            lit = T.SVal(owner, e.name, idx)
            return T.ELit(lit), ("scale", owner)
        m = kind[1]
        var = T.EVar(measure_var(m.name))
        if m.kind == "boolean":
            return var, "bool"
        if m.kind == "numeric":
            return var, "int"
        return var, ("scale", m.name)
    raise SleecError("bad operand %r" % (e,))


def _scale_cmp(op, scale, a, b):
    """Order comparisons on a scale, phrased with the scale's <= test."""
    if op == "=":
        return T.ECmp("==", a, b)
    if op == "<>":
        return T.ECmp("!=", a, b)
    if op == "<=":
        return T.EScaleLe(scale, a, b)
    if op == ">=":
        return T.EScaleLe(scale, b, a)
    if op == "<":
        return T.ENot(T.EScaleLe(scale, b, a))
    if op == ">":
        return T.ENot(T.EScaleLe(scale, a, b))
    raise SleecError("bad comparison operator %r" % op)


_INT_OPS = {"=": "==", "<>": "!=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}


def norm_condition(e, wf):
    """Engine expression for a source condition."""
    if isinstance(e, ast.And):
        return T.EAnd(norm_condition(e.left, wf), norm_condition(e.right, wf))
    if isinstance(e, ast.Or):
        return T.EOr(norm_condition(e.left, wf), norm_condition(e.right, wf))
    if isinstance(e, ast.Not):
        return T.ENot(norm_condition(e.operand, wf))
    if isinstance(e, ast.BoolLit):
        return T.ELit(e.value)
    if isinstance(e, ast.NameRef):
        # a bare name in condition position is a boolean measure
        return T.ECmp("==", T.EVar(measure_var(e.name)), T.ELit(True))
    if isinstance(e, ast.Cmp):
        (a, ta) = _operand(e.left, wf)
        (b, tb) = _operand(e.right, wf)
        if isinstance(ta, tuple) or isinstance(tb, tuple):
            scale = ta[1] if isinstance(ta, tuple) else tb[1]
            return _scale_cmp(e.op, scale, a, b)
        return T.ECmp(_INT_OPS[e.op], a, b)
    raise SleecError("cannot normalize condition %r" % (e,))

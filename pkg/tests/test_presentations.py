from fractions import Fraction

import pytest

from shuffleop.presentations import (BUILTINS, SourceError, builtin, identity_library, load_file,
                                     lookup_identity, parse)
from shuffleop.symmetrize import row_reduce

TP = """# transposed Poisson
op mul : symmetric
op bra : antisymmetric
id tp : 2*mul(bra(x1, x2), x3) = bra(mul(x1, x3), x2) + bra(x1, mul(x2, x3))
"""


def test_parse_example():
    p = parse(TP)
    assert [(o.name, o.symmetry) for o in p.ops] == [("mul", "symmetric"), ("bra", "antisymmetric")]
    (ident,) = p.identities
    assert ident.name == "tp" and ident.arity == 3
    coeffs = sorted(c for c, _ in ident.terms)
    assert coeffs == [Fraction(-1), Fraction(-1), Fraction(2)]


def test_render_roundtrip():
    p = parse(TP)
    again = parse(p.render())
    assert again.render() == p.render()
    assert again.identities[0].terms == p.identities[0].terms


def test_rational_coefficients_and_continuation():
    p = parse("op mul : plain\nid half : 1/2*mul(x1, x2)\n   - 3/4*mul(x2, x1) = 0\n")
    assert sorted(c for c, _ in p.identities[0].terms) == [Fraction(-3, 4), Fraction(1, 2)]


@pytest.mark.parametrize("text,line,column,fragment", [
    ("op mul : plain\nid a : foo(x1, x2) = 0\n", 2, 8, "unknown operation"),
    ("op mul : plain\nid a : mul(x1) = 0\n", 2, 8, "takes 2 arguments"),
    ("op mul : plain\nid a : mul(x1, x1) = 0\n", 2, 8, "repeated variable"),
    ("op mul : plain\nid a : mul(x1, x3) = 0\n", 2, 4, "without gaps"),
    ("op mul : plain\nid a : 1/0*mul(x1, x2) = 0\n", 2, 8, "malformed rational"),
    ("op mul : plain\nop mul : symmetric\n", 2, 3, "declared twice"),
    ("op mul : plain\nid a : mul(x1, x2) = 0\nid a : mul(x2, x1) = 0\n", 3, 4, "declared twice"),
    ("op mul : weird\n", 1, 10, "unknown symmetry"),
    ("op mul : plain\nbanana\n", 2, 1, "expected 'op' or 'id'"),
])
def test_errors_carry_position(text, line, column, fragment):
    with pytest.raises(SourceError) as info:
        parse(text, "case.opd")
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert fragment in err.message
    assert str(err).startswith(f"case.opd:{line}:{column}:")


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_load(name):
    p = builtin(name)
    assert p.identities
    order = p.order()
    assert all(r.arity >= 2 for r in p.relations(order))


def test_builtin_unknown():
    with pytest.raises(KeyError):
        builtin("nope")


def test_identity_lookup_case_insensitive():
    assert lookup_identity("Manifold").name == "manifold"
    assert builtin("com-gd").identity("gd-COM").name == "GD-com"
    with pytest.raises(KeyError):
        lookup_identity("missing")


def test_library_names():
    names = {i.name for i in identity_library().identities}
    assert {"manifold", "spec1", "spec2", "tp-identity", "gd-com", "gd1"} <= names


def test_com_gd_and_tp_relation_spans_agree():
    cg, tp = builtin("com-gd"), builtin("tp")
    order = cg.order()
    a = [p.as_dict() for p in row_reduce(cg.relations(order), order)]
    b = [p.as_dict() for p in row_reduce(tp.relations(order), order)]
    assert len(a) == 6
    assert a == b


def test_load_file(tmp_path):
    f = tmp_path / "tp.opd"
    f.write_text(TP)
    p = load_file(f)
    assert p.name == "tp"
    f.write_text("op mul : plain\nid a : mul(x1, x2, x3) = 0\n")
    with pytest.raises(SourceError) as info:
        load_file(f)
    assert info.value.source.endswith("tp.opd")

import pytest

from psiforge import (
    EvalError,
    ParseError,
    eval_term,
    example_3bamo,
    holds,
    make_algebra,
    parse,
    parse_term,
    pretty,
    smallest_diamond,
)
from psiforge.terms import (
    Binary,
    Identity,
    Inequality,
    QuasiIdentity,
    Unary,
    Var,
    parse_axiom_file,
    variables,
)
from psiforge.ternary_operator import discriminator_d, discriminator_t, mu


def test_parse_pi4_sentence():
    s = parse("dia(a,b,f) <= dia(b,a,f)")
    assert isinstance(s, Inequality)
    assert pretty(s) == "dia(a, b, f) <= dia(b, a, f)"


def test_parse_mu_definition():
    s = parse("mu(z) = not dia(1,1,not z) and not dia(1,not z,1)")
    assert isinstance(s, Identity)
    # binds as a conjunction of two negations
    assert isinstance(s.rhs, Binary) and s.rhs.op == "and"
    assert isinstance(s.rhs.left, Unary) and s.rhs.left.op == "not"


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse("dia(a,b")
    assert exc.value.position == 8
    with pytest.raises(ParseError):
        parse("dia(a,b,c) <= ?")
    with pytest.raises(ParseError):
        parse("mu(a,b) = 0")  # arity
    with pytest.raises(ParseError):
        parse("not = 1")  # reserved connective
    with pytest.raises(ParseError):
        parse("a = b trailing")


def test_precedence():
    t = parse_term("not a and b")
    assert t == Binary("and", Unary("not", Var("a")), Var("b"))
    t = parse_term("a or b and c")
    assert t == Binary("or", Var("a"), Binary("and", Var("b"), Var("c")))
    t = parse_term("a -> b xor c")
    assert t == Binary("->", Var("a"), Binary("xor", Var("b"), Var("c")))
    t = parse_term("(a -> b) xor c")
    assert t == Binary("xor", Binary("->", Var("a"), Var("b")), Var("c"))


def test_left_associativity():
    t = parse_term("a and b and c")
    assert t == Binary("and", Binary("and", Var("a"), Var("b")), Var("c"))


def test_d_as_variable_and_function():
    t = parse_term("d and d(x)")
    assert t == Binary("and", Var("d"), Unary("d", Var("x")))


def test_quasi_identity():
    s = parse("a and f = 0 => dia(a,b,f) = 0")
    assert isinstance(s, QuasiIdentity)
    assert len(s.premises) == 1
    s2 = parse("a = 0 & b = 0 => dia(a,b,c) = 0")
    assert len(s2.premises) == 2
    with pytest.raises(ParseError):
        parse("a <= b => a = b")  # premises must be identities


@pytest.mark.parametrize(
    "text",
    [
        "dia(a,b,f) <= dia(a,b,not d) or dia(a,b,not e) or dia(d,e,f)",
        "mu(z) = not dia(1,1,not z) and not dia(1,not z,1)",
        "a and f = 0 => dia(a,1,f) = 0",
        "disc(x, y, z) = (x and d(x xor y)) or (z and not d(x xor y))",
        "0 <= 1",
    ],
)
def test_pretty_reparses_to_same_ast(text):
    s = parse(text)
    assert parse(pretty(s)) == s
    # printing is a normal form on concrete syntax
    assert pretty(parse(pretty(s))) == pretty(s)


def test_variables_in_order_of_appearance():
    s = parse("dia(f,b,a) <= d or c")
    assert variables(s) == ["f", "b", "a", "d", "c"]


def test_eval_xor(alg2):
    op = smallest_diamond(alg2)
    for e in alg2.elements():
        assert eval_term(parse_term("x xor x"), op, {"x": e}) == 0


def test_eval_unassigned_variable(alg2):
    with pytest.raises(EvalError):
        eval_term(parse_term("x or y"), smallest_diamond(alg2), {"x": 1})


def test_eval_matches_builtin_mu_d_disc(alg2, psi_ops_k2):
    mu_t = parse_term("mu(z)")
    d_t = parse_term("d(z)")
    for op in psi_ops_k2[:4]:
        for z in alg2.elements():
            assert eval_term(mu_t, op, {"z": z}) == mu(op, z)
            assert eval_term(d_t, op, {"z": z}) == discriminator_d(op, z)
    disc_t = parse_term("disc(x, y, z)")
    op = psi_ops_k2[0]
    for x in alg2.elements():
        for y in alg2.elements():
            for z in alg2.elements():
                assert eval_term(disc_t, op, {"x": x, "y": y, "z": z}) == discriminator_t(op, x, y, z)


def test_holds_pi3_on_smallest(alg2):
    assert holds(parse("a and f <= dia(a,a,f)"), smallest_diamond(alg2))[0]


def test_holds_pi1_witness_on_example():
    pi1 = parse("dia(a,b,f) <= dia(a,b,not d) or dia(a,b,not e) or dia(d,e,f)")
    ok, witness = holds(pi1, example_3bamo())
    assert not ok
    assert witness == {"a": 3, "b": 1, "f": 3, "d": 2, "e": 1}


def test_holds_quasi_identity(alg2):
    q = parse("a and f = 0 => dia(a,b,f) = 0")
    assert holds(q, smallest_diamond(alg2))[0]
    from psiforge.ternary_operator import constant_operator

    alg1 = make_algebra(1)
    bad = constant_operator(alg1, 1)
    ok, witness = holds(q, bad)
    assert not ok and witness is not None


def test_axiom_file_parsing():
    text = """
    # a comment
    dia(a,b,f) <= dia(b,a,f)

    a and f <= dia(a,a,f)  # trailing comment
    """
    sentences = parse_axiom_file(text)
    assert len(sentences) == 2

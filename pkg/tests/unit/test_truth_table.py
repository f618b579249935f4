"""Unit tests for packed truth tables and the complement check."""

import itertools

import numpy as np
import pytest


class TestTruthTable:
    """Tests for TruthTable."""

    def test_from_expr_and(self):
        """Test x1 & x2 is 1 only on row 3."""
        from src.logic import TruthTable, make_and, make_var

        table = TruthTable.from_expr(make_and(make_var(1), make_var(2)))
        assert table.variables == (1, 2)
        assert table.bits == 0b1000
        assert list(table.minterms()) == [3]

    def test_explicit_variables(self):
        """Test tabulating over a wider variable list."""
        from src.logic import TruthTable, make_var

        table = TruthTable.from_expr(make_var(2), variables=[1, 2])
        assert table.bits == 0b1100
        assert not table.depends_on(1)
        assert table.depends_on(2)
        assert table.depends_on_vars() == (2,)

    def test_assume(self):
        """Test fixing a support variable outside the table."""
        from src.logic import TruthTable, make_and, make_var

        table = TruthTable.from_expr(make_and(make_var(1), make_var(2)), variables=[1], assume={2: 1})
        assert table.bits == 0b10

    def test_untabulated_variable(self):
        """Test a support variable must be tabulated or assumed."""
        from src.logic import ExpressionError, TruthTable, make_and, make_var

        with pytest.raises(ExpressionError):
            TruthTable.from_expr(make_and(make_var(1), make_var(2)), variables=[1])

    def test_cofactor(self):
        """Test restriction keeps the variable list."""
        from src.logic import TruthTable, make_and, make_var

        table = TruthTable.from_expr(make_and(make_var(1), make_var(2)))
        assert table.cofactor(1, 1).bits == 0b1100
        assert table.cofactor(1, 0).bits == 0

    def test_constant(self):
        """Test constant detection."""
        from src.logic import TruthTable, make_var

        table = TruthTable.from_expr(make_var(1))
        assert table.constant_value is None
        assert TruthTable(table.variables, 0).constant_value == 0
        assert TruthTable(table.variables, table.mask).is_constant

    def test_invert_and_evaluate(self):
        """Test complement and point evaluation."""
        from src.logic import TruthTable, make_or, make_var

        table = TruthTable.from_expr(make_or(make_var(3), make_var(5)))
        assert table.evaluate({3: 0, 5: 0}) == 0
        assert (~table).evaluate({3: 0, 5: 0}) == 1
        assert table.evaluate({3: 1, 5: 0}) == 1

    def test_is_parity(self):
        """Test parity recognition."""
        from src.logic import TruthTable, make_and, make_var, make_xnor, make_xor

        x1, x2, x3 = make_var(1), make_var(2), make_var(3)
        assert TruthTable.from_expr(make_xor(x1, x2, x3)).is_parity()
        assert TruthTable.from_expr(make_xnor(x1, x2)).is_parity()
        assert not TruthTable.from_expr(make_and(x1, x2)).is_parity()


class TestIsComplement:
    """Tests for is_complement and equivalent."""

    def test_de_morgan_pair(self):
        """Test x1 & x2 against ~x1 | ~x2."""
        from src.logic import ComplementCheck, is_complement, make_and, make_not, make_or, make_var

        x1, x2 = make_var(1), make_var(2)
        f = make_and(x1, x2)
        g = make_or(make_not(x1), make_not(x2))
        assert is_complement(f, g) is ComplementCheck.COMPLEMENT

    def test_not_complement(self):
        """Test unrelated functions."""
        from src.logic import ComplementCheck, is_complement, make_var

        assert is_complement(make_var(1), make_var(2)) is ComplementCheck.NOT_COMPLEMENT

    def test_constants(self):
        """Test Const 1 against Const 0."""
        from src.logic import is_complement, make_const

        assert is_complement(make_const(1), make_const(0)).is_complement
        assert not is_complement(make_const(1), make_const(1)).is_complement

    def test_cap_exceeded(self):
        """Test the check is undecided above the cap."""
        from src.logic import ComplementCheck, is_complement, make_and, make_not, make_or, make_var

        x1, x2 = make_var(1), make_var(2)
        result = is_complement(make_and(x1, x2), make_or(make_not(x1), make_not(x2)), cap=1)
        assert result is ComplementCheck.UNDECIDED
        assert not result.is_complement

    def test_equivalent(self):
        """Test XOR against its two-level form."""
        from src.logic import equivalent, make_and, make_not, make_or, make_var, make_xor

        x1, x2 = make_var(1), make_var(2)
        sop = make_or(make_and(x1, make_not(x2)), make_and(make_not(x1), x2))
        assert equivalent(make_xor(x1, x2), sop)
        assert not equivalent(make_xor(x1, x2), make_and(x1, x2))

    def test_majority_is_self_dual(self):
        """Test majority of the negated inputs is the complement of majority."""
        from src.logic import ComplementCheck, is_complement, make_and, make_not, make_or, make_var

        def majority(a, b, c):
            return make_or(make_and(a, b), make_and(a, c), make_and(b, c))

        x1, x2, x3 = make_var(1), make_var(2), make_var(3)
        f = majority(x1, x2, x3)
        g = majority(make_not(x1), make_not(x2), make_not(x3))
        assert is_complement(f, g) is ComplementCheck.COMPLEMENT
        assert is_complement(f, f) is ComplementCheck.NOT_COMPLEMENT

    def test_random_pairs_match_brute_force(self):
        """Test the verdict on random pairs against evaluation on every assignment."""
        from src.logic import ComplementCheck, eval_expr, is_complement, make_not, simplify
        from tests.generators import random_expr

        rng = np.random.default_rng(71)
        variables = [1, 2, 3, 4, 5]
        seen = set()
        for trial in range(150):
            f = random_expr(rng, variables, depth=3)
            choice = trial % 3
            if choice == 0:
                g = random_expr(rng, variables, depth=3)
            elif choice == 1:
                g = make_not(f)
            else:
                g = simplify(make_not(f))
            union = sorted(f.variables | g.variables)
            expected = all(
                eval_expr(f, dict(zip(union, bits))) != eval_expr(g, dict(zip(union, bits)))
                for bits in itertools.product((0, 1), repeat=len(union))
            )
            result = is_complement(f, g)
            assert result is (ComplementCheck.COMPLEMENT if expected else ComplementCheck.NOT_COMPLEMENT)
            seen.add(result)
        assert seen == {ComplementCheck.COMPLEMENT, ComplementCheck.NOT_COMPLEMENT}


class TestPopcount:
    """Tests for popcount."""

    def test_matches_binary_string(self):
        """Test set-bit counts on small and wide integers."""
        from src.logic.truth_table import popcount

        for value in (0, 1, 0b1011, (1 << 64) - 1, (1 << 200) | 5):
            assert popcount(value) == bin(value).count("1")

import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.exceptions import (
    ConfigParseException,
    DomainException,
    GridMismatchException,
    IntegrationBlowupException,
    NonConvergenceException,
    NumericalFailureException,
    ParameterValidationException,
    PositivityViolationException,
    SeizLabException,
)
from core.validators import (
    validate_finite,
    validate_nonnegative,
    validate_positive,
    validate_positive_int,
    validate_probability,
    validate_relaxation,
    validate_switch,
)


class ExceptionContractTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(ParameterValidationException().exit_code, 2)
        self.assertEqual(ConfigParseException().exit_code, 2)
        self.assertEqual(DomainException().exit_code, 2)
        self.assertEqual(NumericalFailureException().exit_code, 3)
        self.assertEqual(IntegrationBlowupException(1.0).exit_code, 3)
        self.assertEqual(PositivityViolationException(1.0, 's', -1.0).exit_code, 3)
        self.assertEqual(GridMismatchException().exit_code, 3)
        self.assertEqual(NonConvergenceException().exit_code, 4)

    def test_default_detail_and_code(self):
        exc = DomainException()
        self.assertEqual(str(exc), DomainException.default_detail)
        self.assertEqual(exc.code, 'domain_error')
        self.assertIsInstance(exc, SeizLabException)

    def test_field_and_line_are_named(self):
        self.assertEqual(str(ParameterValidationException('p ∈ [0,1] violated', field='p')), 'p: p ∈ [0,1] violated')
        self.assertEqual(str(ConfigParseException('bad key', lineno=7)), 'line 7: bad key')

    def test_numerical_failures_carry_location(self):
        blowup = IntegrationBlowupException(2.5)
        self.assertEqual(blowup.t, 2.5)
        self.assertIn('t=2.5', str(blowup))

        negative = PositivityViolationException(3.0, 'i', -1e-6)
        self.assertEqual((negative.t, negative.component, negative.value), (3.0, 'i', -1e-6))
        self.assertIn('i=', str(negative))


class ValidatorTests(SimpleTestCase):
    def test_finite_coerces_strings(self):
        self.assertEqual(validate_finite('0.25', 'x'), 0.25)
        with self.assertRaises(ValidationError):
            validate_finite('abc', 'x')
        with self.assertRaises(ValidationError):
            validate_finite(math.inf, 'x')
        with self.assertRaises(ValidationError):
            validate_finite(None, 'x')

    def test_sign_validators(self):
        self.assertEqual(validate_nonnegative(0, 'b'), 0.0)
        self.assertEqual(validate_positive(0.5, 'mu'), 0.5)
        with self.assertRaises(ValidationError):
            validate_nonnegative(-1e-9, 'b')
        with self.assertRaises(ValidationError):
            validate_positive(0.0, 'mu')

    def test_probability_message_names_the_invariant(self):
        with self.assertRaises(ValidationError) as ctx:
            validate_probability(1.5, 'p')
        self.assertIn('p ∈ [0,1]', ' '.join(str(m) for m in ctx.exception.messages))
        self.assertEqual(validate_probability(1, 'p'), 1.0)

    def test_switch_and_integer_validators(self):
        self.assertEqual(validate_switch('1', 'pi1'), 1)
        self.assertEqual(validate_switch(0.0, 'pi1'), 0)
        with self.assertRaises(ValidationError):
            validate_switch(0.5, 'pi1')
        self.assertEqual(validate_positive_int('200', 'max_iter'), 200)
        with self.assertRaises(ValidationError):
            validate_positive_int(2.5, 'max_iter')
        with self.assertRaises(ValidationError):
            validate_positive_int(0, 'max_iter')

    def test_relaxation_range(self):
        self.assertEqual(validate_relaxation(1, 'relaxation'), 1.0)
        with self.assertRaises(ValidationError):
            validate_relaxation(0, 'relaxation')
        with self.assertRaises(ValidationError):
            validate_relaxation(1.01, 'relaxation')

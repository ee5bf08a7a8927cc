class SeizLabException(Exception):
    exit_code = 1
    default_detail = 'SEIZ lab error'
    default_code = 'error'

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def __str__(self):
        return str(self.detail)


class ParameterValidationException(SeizLabException):
    exit_code = 2
    default_detail = 'Invalid parameters provided'
    default_code = 'invalid_parameters'

    def __init__(self, detail=None, field=None, code=None):
        self.field = field
        if field and detail:
            detail = f"{field}: {detail}"
        super().__init__(detail, code)


class ConfigParseException(SeizLabException):
    exit_code = 2
    default_detail = 'Scenario configuration could not be parsed'
    default_code = 'config_parse_error'

    def __init__(self, detail=None, lineno=None, code=None):
        self.lineno = lineno
        if lineno is not None and detail:
            detail = f"line {lineno}: {detail}"
        super().__init__(detail, code)


class DomainException(SeizLabException):
    exit_code = 2
    default_detail = 'Argument outside the domain of the operation'
    default_code = 'domain_error'


class NumericalFailureException(SeizLabException):
    exit_code = 3
    default_detail = 'Numerical failure'
    default_code = 'numerical_failure'


class IntegrationBlowupException(NumericalFailureException):
    default_detail = 'Integration produced a non-finite state'
    default_code = 'integration_blowup'

    def __init__(self, t, detail=None):
        self.t = t
        super().__init__(detail or f"{self.default_detail} at t={t:.6g}")


class PositivityViolationException(NumericalFailureException):
    default_detail = 'Integration produced a negative compartment'
    default_code = 'positivity_violation'

    def __init__(self, t, component, value):
        self.t = t
        self.component = component
        self.value = value
        super().__init__(
            f"{self.default_detail}: {component}={value:.3e} at t={t:.6g}; "
            f"the step is too coarse for this scenario"
        )


class GridMismatchException(NumericalFailureException):
    default_detail = 'Trajectory and control signal do not share a grid'
    default_code = 'grid_mismatch'


class NonConvergenceException(SeizLabException):
    exit_code = 4
    default_detail = 'Forward-backward sweep did not converge'
    default_code = 'non_convergence'

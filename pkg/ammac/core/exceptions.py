"""
예외 정의

입력 오류(종료 코드 2)와 수치 오류(종료 코드 3)를 구분합니다.
"""

from typing import Any, Dict, Optional


class AmmacError(Exception):
    """패키지 공통 예외"""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context: Dict[str, Any] = context


class InputError(AmmacError):
    """잘못된 입력 (종료 코드 2)"""


class NumericalError(AmmacError):
    """수치 계산 실패 (종료 코드 3)"""


class ConstraintViolation(InputError):
    """타입 불변식 위반"""

    def __init__(self, invariant: str, amount: Optional[float] = None, message: Optional[str] = None):
        detail = message or f"constraint violated: {invariant}"
        if amount is not None:
            detail = f"{detail} (by {amount:.3e})"
        super().__init__(detail, invariant=invariant, amount=amount)
        self.invariant = invariant
        self.amount = amount


class DegenerateDistribution(InputError):
    """질량점이 하나도 남지 않은 분포"""


class DomainError(InputError):
    """함수 정의역 밖의 인자"""


class EmptyMixture(InputError):
    """양의 가중치가 없는 혼합"""


class ConfigError(InputError):
    """설정 불변식 위반"""


class SeedError(InputError):
    """난수 시드 오류"""


class QuadratureDivergence(NumericalError):
    """구적 세분화가 수렴하지 않음"""


class FormulaMismatch(NumericalError):
    """두 계산 경로의 결과 불일치"""

    def __init__(self, name: str, primary: float, secondary: float):
        super().__init__(
            f"{name}: primary={primary:.10g} literal={secondary:.10g}",
            primary=primary,
            secondary=secondary,
        )
        self.primary = primary
        self.secondary = secondary


class NotConverged(NumericalError):
    """최적화 미수렴 (최선의 해를 함께 전달)"""

    def __init__(self, message: str, solution: Any = None):
        super().__init__(message)
        self.solution = solution


class OrderingViolation(NumericalError):
    """베이스라인 순서 관계 위반"""

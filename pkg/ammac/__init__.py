"""
AM-MAC 용량 영역 계산 패키지

Y = aX₁ + X₁X₂ + Z 채널(PT 평균전력 / BD 첨두진폭 제약)의
용량 영역을 계산하고 KKT 조건으로 검증합니다.
"""

__version__ = "1.0.0"

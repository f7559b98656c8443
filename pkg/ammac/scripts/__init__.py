"""
스크립트 모듈

결과 CSV로부터 그림을 만드는 비대화형 스크립트
"""

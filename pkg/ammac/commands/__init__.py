"""CLI 명령 모음"""

import logging
import sys

import click

from ammac import __version__
from ammac.commands import baseline, boundary, corners, kkt, mc_check, sweep

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: bool) -> None:
    """로그는 stderr로 (stdout은 JSON/CSV 경로 전용)"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def create_cli() -> click.Group:
    """
    CLI 애플리케이션 생성 및 초기화

    Returns:
        명령이 등록된 click 그룹
    """

    @click.group(name="ammac", help="AM-MAC 용량 영역 계산기")
    @click.version_option(__version__, prog_name="ammac")
    @click.option("--verbose", "-v", is_flag=True, help="DEBUG 로그 출력")
    def cli(verbose: bool) -> None:
        configure_logging(verbose)

    # 명령 등록
    cli.add_command(corners.corners)
    cli.add_command(boundary.boundary)
    cli.add_command(boundary.bdmax)
    cli.add_command(baseline.baseline)
    cli.add_command(kkt.kkt)
    cli.add_command(sweep.sweep)
    cli.add_command(mc_check.mc_check)  # mc-check
    return cli


cli = create_cli()


if __name__ == "__main__":
    cli()

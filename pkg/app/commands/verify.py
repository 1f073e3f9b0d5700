"""
app/commands/verify.py

Comando `verify`: ejecuta el conjunto de invariantes e imprime una tabla.
"""
import click

from app.commands.runner import command_run
from app.schemas.responses import VerifyReport
from app.services.verification_service import VerificationService


def render_report(report: VerifyReport) -> str:
    """Tabla de texto determinista: nombre, estado, valor y tolerancia"""
    width = max(len(check.name) for check in report.checks)
    lines = [f"{'check':<{width}}  status  {'value':>10}  {'threshold':>10}"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{check.name:<{width}}  {status:<6}  {check.value:>10.3e}  {check.threshold:>10.1e}")
    total = len(report.checks)
    lines.append(f"{total - len(report.failed)}/{total} checks passed")
    return "\n".join(lines) + "\n"


@click.command("verify")
def verify():
    """Ejecuta las comprobaciones incorporadas."""
    with command_run("verify", {}) as run:
        report = VerificationService.run_all()
        click.echo(render_report(report), nl=False)
        if not report.passed:
            run.exit_code = 1

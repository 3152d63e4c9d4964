#!/usr/bin/env python3

"""
TraceRing - Web Workbench
Reduce trace polynomials, test identities and compute character rings in the browser
"""

from typing import Tuple

import gradio as gr

from ..core.charring import (
    MonomialOrder,
    buchberger,
    certifies_psi_zero,
    manifold_ideal,
    parse_presentation,
    quotient_dimension,
)
from ..core.config import Config
from ..core.errors import ComputationCancelled, ResourceLimitExceeded, TraceRingError
from ..core.reduce import Target, psi_normal_form, reduce_to_T, trace_reduction
from ..core.repeval import SamplingMode, verify_identity
from ..core.tracepoly import parse_poly
from ..utils.guardrails import check_polynomial_text, check_presentation_text
from ..utils.tools import format_identity_report, format_polynomials, format_trace

EXAMPLE_PRESENTATION = """generators: 2
relator: a1 a2 a1 a2^-1 a1^-1 a2^-1
"""


def _issues(check) -> str:
    lines = [f"❌ {issue}" for issue in check.issues_found]
    lines += [f"💡 {tip}" for tip in check.recommendations]
    return "\n".join(lines)


class TraceRingApp:
    """Handlers behind the three workbench tabs."""

    def __init__(self, budget: int = Config.GB_BUDGET):
        self.budget = budget

    def reduce(self, text: str, target: str, show_trace: bool) -> str:
        check = check_polynomial_text(text)
        if not check.is_valid:
            return _issues(check)
        p = parse_poly(text)
        target = Target(target)
        if show_trace:
            return format_trace(trace_reduction(p, target))
        return str(reduce_to_T(p) if target is Target.T else psi_normal_form(p))

    def verify(self, text: str, mode: str, trials: int, seed: int) -> str:
        check = check_polynomial_text(text)
        if not check.is_valid:
            return _issues(check)
        try:
            report = verify_identity(parse_poly(text), int(trials), int(seed), SamplingMode(mode))
        except TraceRingError as exc:
            return f"❌ {exc}"
        return format_identity_report(report)

    def character_ring(self, presentation_text: str, order: str, poly_text: str) -> Tuple[str, str, str]:
        """Generators, Groebner basis with quotient dimension, and an optional membership verdict."""
        check = check_presentation_text(presentation_text)
        if not check.is_valid:
            return _issues(check), "", ""
        presentation = parse_presentation(presentation_text)
        ideal = manifold_ideal(presentation)
        try:
            basis = buchberger(ideal, MonomialOrder(order), self.budget)
        except (ResourceLimitExceeded, ComputationCancelled) as exc:
            return format_polynomials(ideal.generators), f"⚠️  {exc}", ""

        summary = f"{format_polynomials(basis.basis)}\n\nQuotient dimension: {quotient_dimension(basis)}"
        verdict = ""
        if poly_text.strip():
            poly_check = check_polynomial_text(poly_text)
            if not poly_check.is_valid:
                verdict = _issues(poly_check)
            elif certifies_psi_zero(parse_poly(poly_text), presentation, MonomialOrder(order), self.budget):
                verdict = "✅ Certified: the normal form lies in the ideal"
            else:
                verdict = "⚠️  Not certified (membership not established)"
        return format_polynomials(ideal.generators), summary, verdict


def create_demo(app: TraceRingApp = None) -> gr.Blocks:
    """Create the Gradio workbench."""
    app = app or TraceRingApp()

    with gr.Blocks(title="TraceRing - Trace Polynomial Workbench", theme=gr.themes.Soft(primary_hue="indigo")) as demo:
        gr.Markdown("# 🧮 TraceRing\nSL(2,C) trace polynomials, identities and character rings")

        with gr.Tab("Reduce"):
            poly_input = gr.Textbox(label="Trace polynomial", value="(a1 a3 a2)", lines=2)
            with gr.Row():
                target = gr.Radio(choices=[Target.T0.value, Target.T.value], value=Target.T0.value, label="Target coordinates")
                show_trace = gr.Checkbox(label="Show rewrite steps")
            reduce_btn = gr.Button("🚀 Reduce", variant="primary")
            reduce_output = gr.Textbox(label="Result", lines=8)
            reduce_btn.click(fn=app.reduce, inputs=[poly_input, target, show_trace], outputs=reduce_output)

        with gr.Tab("Verify"):
            identity_input = gr.Textbox(label="Trace polynomial", value="(a1 a2) + (a1 a2^-1) - (a1)(a2)", lines=2)
            with gr.Row():
                mode = gr.Radio(choices=[m.value for m in SamplingMode], value=SamplingMode.SL2.value, label="Matrices")
                trials = gr.Slider(minimum=1, maximum=200, value=Config.TRIALS, step=1, label="Trials")
                seed = gr.Number(value=Config.SEED, precision=0, label="Seed")
            verify_btn = gr.Button("🚀 Verify", variant="primary")
            verify_output = gr.Textbox(label="Report", lines=6)
            verify_btn.click(fn=app.verify, inputs=[identity_input, mode, trials, seed], outputs=verify_output)

        with gr.Tab("Character ring"):
            presentation_input = gr.Textbox(label="Presentation", value=EXAMPLE_PRESENTATION, lines=5)
            with gr.Row():
                order = gr.Radio(choices=[o.value for o in MonomialOrder], value=MonomialOrder.GREVLEX.value, label="Monomial order")
                member_input = gr.Textbox(label="Polynomial to certify (optional)", value="")
            ring_btn = gr.Button("🚀 Compute", variant="primary")
            generators_output = gr.Textbox(label="Ideal generators", lines=6)
            basis_output = gr.Textbox(label="Groebner basis", lines=6)
            member_output = gr.Textbox(label="Membership", lines=1)
            ring_btn.click(
                fn=app.character_ring,
                inputs=[presentation_input, order, member_input],
                outputs=[generators_output, basis_output, member_output],
            )

    return demo


if __name__ == "__main__":
    demo = create_demo()
    demo.launch(
        server_name="0.0.0.0",
        server_port=Config.PORT,
        show_error=True,
        share=Config.SHARE
    )

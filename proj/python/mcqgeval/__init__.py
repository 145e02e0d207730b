"""Python bindings for the mcqg assessment toolkit."""

import json as _json

from ._core import (  # noqa: F401
    Error,
    GeneratedOutput,
    MCQExample,
    ParseStatus,
    classify_question_type,
    classify_standalone,
    complexity_score,
    diversity,
    ensemble_first_agreement,
    entropy,
    exact_match_closed_form,
    expected_entropy,
    grammar_rate,
    load_dataset,
    macro_f1,
    naive_grammar_errors,
    overlap_score,
    parse_generated,
    simulate_exact_match,
    simulate_overlap,
    unique_option_count,
    zipf,
)
from ._core import run_command as _run_command


def run(command, **options):
    """Run a CLI workflow in-process and return its JSON report as a dict."""
    return _json.loads(_run_command(command, options))

"""
Persisted search runs.

A run moves through pending -> running -> completed, or to error with the
message kept on the row.
"""

import logging

from django.db import transaction
from django.utils import timezone

from ..models import ContestEvaluation, SearchRun
from .config import SolverOptions
from .designer import SearchResult, search
from .payoff_model import MarginalBenefit

logger = logging.getLogger(__name__)


def record_search(model: MarginalBenefit, model_spec: str, n: int, objective: str, direction: str,
                  options: SolverOptions, jobs: int = 1) -> tuple[SearchRun, SearchResult | None]:
    """Run one exhaustive search and store it with every evaluated contest."""
    run = SearchRun.objects.create(
        model_spec=model_spec,
        objective=objective,
        direction=direction,
        players=n,
        status='pending',
    )
    try:
        run.status = 'running'
        run.save()

        result = search(model, n, objective, direction, options, jobs)
        winners = set(result.argopt)
        with transaction.atomic():
            ContestEvaluation.objects.bulk_create([
                ContestEvaluation(
                    run=run,
                    contest_id=row.contest.contest_id,
                    composition=row.contest.label,
                    value=row.report.value(objective) if row.success else None,
                    is_optimal=row.contest in winners,
                    error_message=row.error_message,
                )
                for row in result.table.rows
            ])
            run.optimal_value = result.optimal_value
            run.excluded_count = result.excluded
            run.status = 'completed'
            run.completed_at = timezone.now()
            run.save()
        logger.info(f"Saved search run {run.id}: {len(result.table.rows)} contests")
        return run, result

    except Exception as e:
        logger.error(f"Search run {run.id} failed: {e}", exc_info=True)
        run.status = 'error'
        run.error_message = str(e)
        run.save()
        return run, None

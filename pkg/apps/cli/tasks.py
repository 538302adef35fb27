from celery import shared_task

from .services import SweepService


@shared_task
def evaluate_grid_point(target, point):
    """One verifier run; returns the JSON-safe record for the run log"""
    return SweepService.evaluate_point(target, point)

from django.db import models


class SearchRun(models.Model):
    """One exhaustive search over all contests of a player count"""

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('completed', 'Completed'),
        ('error', 'Error'),
    ]
    DIRECTION_CHOICES = [
        ('min', 'Minimize'),
        ('max', 'Maximize'),
    ]

    model_spec = models.CharField(max_length=255, db_index=True)
    objective = models.CharField(max_length=32, db_index=True)
    direction = models.CharField(max_length=3, choices=DIRECTION_CHOICES)
    players = models.PositiveIntegerField()
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='pending', db_index=True)
    optimal_value = models.FloatField(null=True, blank=True)
    excluded_count = models.PositiveIntegerField(default=0)
    error_message = models.TextField(blank=True)
    started_at = models.DateTimeField(auto_now_add=True, db_index=True)
    completed_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-started_at']

    def __str__(self):
        return f"{self.direction} {self.objective} n={self.players} ({self.model_spec})"

    @property
    def evaluation_count(self):
        return self.evaluations.count()

    @property
    def optimal_contests(self):
        return self.evaluations.filter(is_optimal=True)


class ContestEvaluation(models.Model):
    """Objective value of one contest within a search run"""

    run = models.ForeignKey(
        SearchRun,
        on_delete=models.CASCADE,
        related_name='evaluations'
    )
    contest_id = models.PositiveBigIntegerField()
    composition = models.CharField(max_length=255)
    value = models.FloatField(null=True, blank=True)
    is_optimal = models.BooleanField(default=False)
    error_message = models.TextField(blank=True)

    class Meta:
        ordering = ['contest_id']
        unique_together = ['run', 'contest_id']

    def __str__(self):
        return f"({self.composition})"

from django.db import models
from django.utils import timezone


class ScenarioRun(models.Model):
    COMMAND_CHOICES = [
        ('simulate', 'Simulate'),
        ('analyze', 'Analyze'),
        ('optimize', 'Optimize'),
        ('sweep', 'Sweep'),
    ]

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('success', 'Success'),
        ('failed', 'Failed'),
    ]

    command = models.CharField(
        max_length=20,
        choices=COMMAND_CHOICES,
    )

    label = models.CharField(
        max_length=100,
    )

    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default='pending',
    )

    config = models.JSONField(
        default=dict,
    )

    summary = models.JSONField(
        null=True,
        blank=True,
    )

    output_dir = models.CharField(
        max_length=500,
        blank=True,
    )

    created_at = models.DateTimeField(
        default=timezone.now,
    )

    started_at = models.DateTimeField(
        null=True,
        blank=True,
    )

    completed_at = models.DateTimeField(
        null=True,
        blank=True,
    )

    duration = models.DurationField(
        null=True,
        blank=True,
    )

    error_message = models.TextField(
        blank=True,
    )

    exit_code = models.PositiveSmallIntegerField(
        null=True,
        blank=True,
    )

    class Meta:
        ordering = ['-created_at', '-id']
        indexes = [
            models.Index(fields=['command', 'status'], name='simulations_command_7c1d2e_idx'),
            models.Index(fields=['label', 'created_at'], name='simulations_label_3f9a41_idx'),
            models.Index(fields=['created_at'], name='simulations_created_b20e6c_idx'),
        ]

    def __str__(self):
        return f"{self.command} {self.label} ({self.status})"

    def calculate_duration(self):
        if self.started_at and self.completed_at:
            self.duration = self.completed_at - self.started_at

    def mark_as_started(self):
        self.status = 'running'
        self.started_at = timezone.now()
        self.save(update_fields=['status', 'started_at'])

    def mark_as_completed(self, summary=None):
        self.status = 'success'
        self.completed_at = timezone.now()
        self.exit_code = 0
        if summary is not None:
            self.summary = summary
        self.calculate_duration()
        self.save(update_fields=['status', 'completed_at', 'exit_code', 'summary', 'duration'])

    def mark_as_failed(self, error_message='', exit_code=1, summary=None):
        self.status = 'failed'
        self.completed_at = timezone.now()
        self.error_message = error_message
        self.exit_code = exit_code
        if summary is not None:
            self.summary = summary
        self.calculate_duration()
        self.save(update_fields=['status', 'completed_at', 'error_message', 'exit_code', 'summary', 'duration'])

from django.contrib import admin
from .models import ContestEvaluation, SearchRun


@admin.register(SearchRun)
class SearchRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'model_spec', 'objective', 'direction', 'players', 'status', 'evaluation_count', 'started_at']
    list_filter = ['status', 'objective', 'direction']
    search_fields = ['model_spec']
    readonly_fields = ['started_at', 'completed_at']


@admin.register(ContestEvaluation)
class ContestEvaluationAdmin(admin.ModelAdmin):
    list_display = ['id', 'run', 'contest_id', 'composition', 'value', 'is_optimal']
    list_filter = ['run', 'is_optimal']
    search_fields = ['composition']

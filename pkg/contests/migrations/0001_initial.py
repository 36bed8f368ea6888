import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SearchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('model_spec', models.CharField(db_index=True, max_length=255)),
                ('objective', models.CharField(db_index=True, max_length=32)),
                ('direction', models.CharField(choices=[('min', 'Minimize'), ('max', 'Maximize')], max_length=3)),
                ('players', models.PositiveIntegerField()),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('error', 'Error')], db_index=True, default='pending', max_length=20)),
                ('optimal_value', models.FloatField(blank=True, null=True)),
                ('excluded_count', models.PositiveIntegerField(default=0)),
                ('error_message', models.TextField(blank=True)),
                ('started_at', models.DateTimeField(auto_now_add=True, db_index=True)),
                ('completed_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-started_at'],
            },
        ),
        migrations.CreateModel(
            name='ContestEvaluation',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('contest_id', models.PositiveBigIntegerField()),
                ('composition', models.CharField(max_length=255)),
                ('value', models.FloatField(blank=True, null=True)),
                ('is_optimal', models.BooleanField(default=False)),
                ('error_message', models.TextField(blank=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='evaluations', to='contests.searchrun')),
            ],
            options={
                'ordering': ['contest_id'],
                'unique_together': {('run', 'contest_id')},
            },
        ),
    ]

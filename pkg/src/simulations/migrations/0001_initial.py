from django.db import migrations, models
import django.utils.timezone


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ScenarioRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('simulate', 'Simulate'), ('analyze', 'Analyze'), ('optimize', 'Optimize'), ('sweep', 'Sweep')], max_length=20)),
                ('label', models.CharField(max_length=100)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('success', 'Success'), ('failed', 'Failed')], default='pending', max_length=20)),
                ('config', models.JSONField(default=dict)),
                ('summary', models.JSONField(blank=True, null=True)),
                ('output_dir', models.CharField(blank=True, max_length=500)),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('completed_at', models.DateTimeField(blank=True, null=True)),
                ('duration', models.DurationField(blank=True, null=True)),
                ('error_message', models.TextField(blank=True)),
                ('exit_code', models.PositiveSmallIntegerField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.AddIndex(
            model_name='scenariorun',
            index=models.Index(fields=['command', 'status'], name='simulations_command_7c1d2e_idx'),
        ),
        migrations.AddIndex(
            model_name='scenariorun',
            index=models.Index(fields=['label', 'created_at'], name='simulations_label_3f9a41_idx'),
        ),
        migrations.AddIndex(
            model_name='scenariorun',
            index=models.Index(fields=['created_at'], name='simulations_created_b20e6c_idx'),
        ),
    ]

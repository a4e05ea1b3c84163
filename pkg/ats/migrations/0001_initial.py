# Generated by Django 5.2.5 on 2025-09-11 10:02

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('label', models.CharField(max_length=64, verbose_name='Label')),
                ('include_conclusions', models.BooleanField(verbose_name='Include conclusions')),
                ('seed', models.BigIntegerField(verbose_name='Seed')),
                ('word_limit', models.PositiveIntegerField(verbose_name='Word limit')),
                ('output_root', models.CharField(max_length=1024, verbose_name='Output root')),
                ('manifest_sha256', models.CharField(max_length=64, verbose_name='Manifest SHA-256')),
                ('elapsed_seconds', models.FloatField(verbose_name='Elapsed seconds')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='DocumentResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('doc_id', models.CharField(max_length=255, verbose_name='Document')),
                ('department', models.CharField(max_length=255, verbose_name='Department')),
                ('stage', models.CharField(max_length=8, verbose_name='Stage')),
                ('error', models.TextField(blank=True, default='', verbose_name='Error')),
                ('scores', models.JSONField(blank=True, default=dict, verbose_name='Scores')),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='results', to='ats.experimentrun')),
            ],
            options={
                'ordering': ['stage', 'department', 'doc_id'],
                'constraints': [models.UniqueConstraint(fields=('run', 'doc_id'), name='unique_document_per_run')],
            },
        ),
    ]

# Generated by Django 4.2.7 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SolveRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('v', models.PositiveSmallIntegerField(verbose_name='Ambient dimension')),
                ('d', models.PositiveSmallIntegerField(verbose_name='Minimum distance')),
                ('dims', models.CharField(max_length=64, verbose_name='Dimension set')),
                ('model_kind', models.CharField(default='packing', max_length=20, verbose_name='Model')),
                ('cuts', models.CharField(blank=True, max_length=64, verbose_name='Cut families')),
                ('method', models.CharField(choices=[('clique', 'Clique branch and bound'), ('highs', 'HiGHS MILP'), ('maxclique', 'Direct clique search')], default='clique', max_length=20, verbose_name='Method')),
                ('group_order', models.PositiveIntegerField(default=1, verbose_name='Group order')),
                ('status', models.CharField(choices=[('optimal', 'Optimal'), ('feasible', 'Feasible'), ('infeasible', 'Infeasible'), ('unknown', 'Unknown')], max_length=12, verbose_name='Status')),
                ('value', models.IntegerField(blank=True, null=True, verbose_name='Objective value')),
                ('relaxation', models.FloatField(blank=True, null=True, verbose_name='LP relaxation')),
                ('nodes', models.PositiveBigIntegerField(default=0, verbose_name='Search nodes')),
                ('wall_time', models.FloatField(default=0, verbose_name='Wall time, s')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Recorded at')),
            ],
            options={
                'verbose_name': 'Solver run',
                'verbose_name_plural': 'Solver runs',
                'ordering': ['-created_at'],
            },
        ),
    ]

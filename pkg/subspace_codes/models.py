from django.db import models


class SolveRun(models.Model):
    METHOD_CHOICES = [
        ('clique', 'Clique branch and bound'),
        ('highs', 'HiGHS MILP'),
        ('maxclique', 'Direct clique search'),
    ]

    STATUS_CHOICES = [
        ('optimal', 'Optimal'),
        ('feasible', 'Feasible'),
        ('infeasible', 'Infeasible'),
        ('unknown', 'Unknown'),
    ]

    v = models.PositiveSmallIntegerField(verbose_name='Ambient dimension')
    d = models.PositiveSmallIntegerField(verbose_name='Minimum distance')
    dims = models.CharField(max_length=64, verbose_name='Dimension set')
    model_kind = models.CharField(max_length=20, default='packing', verbose_name='Model')
    cuts = models.CharField(max_length=64, blank=True, verbose_name='Cut families')
    method = models.CharField(max_length=20, choices=METHOD_CHOICES, default='clique', verbose_name='Method')
    group_order = models.PositiveIntegerField(default=1, verbose_name='Group order')
    status = models.CharField(max_length=12, choices=STATUS_CHOICES, verbose_name='Status')
    value = models.IntegerField(null=True, blank=True, verbose_name='Objective value')
    relaxation = models.FloatField(null=True, blank=True, verbose_name='LP relaxation')
    nodes = models.PositiveBigIntegerField(default=0, verbose_name='Search nodes')
    wall_time = models.FloatField(default=0, verbose_name='Wall time, s')
    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Recorded at')

    class Meta:
        verbose_name = 'Solver run'
        verbose_name_plural = 'Solver runs'
        ordering = ['-created_at']

    def __str__(self):
        value = '-' if self.value is None else self.value
        return f'A(v={self.v}, d={self.d}; T={self.dims}) {self.method}: {value} ({self.status})'

    @property
    def dim_set(self):
        return frozenset(int(k) for k in self.dims.split(',') if k)

    @property
    def is_lower_bound(self):
        """A found code always certifies a lower bound, for the full dimension range only."""
        return self.value is not None and self.model_kind == 'packing' and self.dim_set == frozenset(range(self.v + 1))

    @classmethod
    def best_lower_bounds(cls):
        """Largest recorded value per (v, d) among runs over all dimensions."""
        best = {}
        for run in cls.objects.exclude(value=None).filter(model_kind='packing'):
            if not run.is_lower_bound:
                continue
            key = (run.v, run.d)
            if key not in best or run.value > best[key].value:
                best[key] = run
        return best

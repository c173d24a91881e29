from dataclasses import dataclass, field


@dataclass(frozen=True, eq=False)
class CompletionReport:
    labels: tuple
    fill_in: tuple
    log_det: float
    entropy: float
    steps: tuple
    step_log_dets: tuple
    clique_tree: dict
    diagnostics: dict = field(default_factory=dict)

    def fill_value(self, row, col):
        for (a, b), value in self.fill_in:
            if (a, b) == (row, col) or (b, a) == (row, col):
                return value
        return None

    def to_dict(self):
        return {
            'labels': list(self.labels),
            'fill_in': [
                {'row': row, 'col': col, 'value': value}
                for (row, col), value in self.fill_in
            ],
            'log_det': self.log_det,
            'entropy': self.entropy,
            'steps': [
                {**step.to_dict(self.labels), 'log_det': log_det}
                for step, log_det in zip(self.steps, self.step_log_dets[1:])
            ],
            'clique_tree': self.clique_tree,
            'diagnostics': self.diagnostics,
        }

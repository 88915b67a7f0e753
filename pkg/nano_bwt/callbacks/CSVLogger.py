import csv
from nano_bwt.callbacks.callback import Callback

COLUMNS = ['stage', 'n', 'sigma', 'b', 'mode', 'threads', 'seconds', 'encoded_bytes', 'dense_ratio', 'sparse_ratio']


class CSVLogger(Callback):
    """CSVLogger callback class. It's used to log one row per build stage into a .csv file, so runs can be compared
    later. Merges that measured their gap array add a row of their own.
    """

    def __init__(self, filename: str, append: bool = False) -> None:
        """Initializer for the CSVLogger callback. It will create a .csv file with the given filename

        Args:
            filename (str): Filename of the log. You can but don't need to add the .csv extension
            append (bool, optional): If set to true CSVLogger will add to the already created file. Defaults to False.
        """
        self.filename = filename if filename.endswith('.csv') else f"{filename}.csv"
        self.run: dict = {}
        # stages finished before the run was planned
        self.pending: list[tuple] = []

        if not append:
            with open(self.filename, 'w', newline='') as f:
                csv.writer(f).writerow(COLUMNS)

    def _write(self, stage: str, seconds, encoded_bytes='', dense_ratio='', sparse_ratio='') -> None:
        if not self.run:
            self.pending.append((stage, seconds, encoded_bytes, dense_ratio, sparse_ratio))
            return

        with open(self.filename, 'a', newline='') as f:
            csv.writer(f).writerow([stage, self.run.get('n'), self.run.get('sigma'), self.run.get('block_size'),
                                    self.run.get('mode'), self.run.get('threads'), seconds, encoded_bytes,
                                    dense_ratio, sparse_ratio])

    def on_run_start(self, *args, **kwargs) -> None:
        self.run = dict(kwargs)

        for row in self.pending:
            self._write(*row)
        self.pending = []

        if kwargs.get('power'):
            self._write('power shortcut', 0.0)

    def on_stage_end(self, *args, **kwargs) -> None:
        self._write(kwargs['stage'], round(kwargs['seconds'], 6), kwargs.get('encoded_bytes', ''))

    def on_merge_end(self, *args, **kwargs) -> None:
        gap = kwargs.get('gap')
        if gap is not None:
            self._write(f"gap node {kwargs['node'].id}", '', (gap['dense_bits'] + 7) // 8,
                        round(gap['dense_ratio'], 4), round(gap['sparse_ratio'], 4))

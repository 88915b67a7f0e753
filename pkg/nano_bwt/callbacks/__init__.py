from nano_bwt.callbacks.callback import Callback
from nano_bwt.callbacks.RunReport import RunReport
from nano_bwt.callbacks.CSVLogger import CSVLogger
from nano_bwt.callbacks.ProgressLogger import ProgressLogger

CALLBACKS = {
    "report": RunReport,
    "csv": CSVLogger,
    "progress": ProgressLogger,
}

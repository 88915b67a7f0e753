from nano_bwt.extio.Container import MAGIC, VERSION, BWT_KIND, DENSE_GAP_KIND, SPARSE_GAP_KIND, GT_KIND, ISA_KIND, peek_kind
from nano_bwt.extio.BwtFile import BwtWriter, BwtFile, write_bwt, copy_bwt, DEFAULT_BWT_BLOCK
from nano_bwt.extio.GapFiles import (DenseGapWriter, SparseGapWriter, DenseGapFile, SparseGapFile, gap_file_sink,
                                     write_gap, anchor_stride_for, DEFAULT_GAP_RESTART)
from nano_bwt.extio.GtFile import GtWriter, GtFile, write_gt
from nano_bwt.extio.IsaFile import IsaFile, write_isa
from nano_bwt.extio.MultiFileIndex import MultiFileIndex, MultiPartBwt, multifile_locate
from nano_bwt.extio.Workspace import Workspace, default_temp_dir, TMPDIR_VARIABLE

FILE_KINDS = {
    BWT_KIND: BwtFile,
    DENSE_GAP_KIND: DenseGapFile,
    SPARSE_GAP_KIND: SparseGapFile,
    GT_KIND: GtFile,
    ISA_KIND: IsaFile,
}


def open_file(path: str, stats=None):
    """Opens any nano_bwt file with the reader its header names

    Raises:
        CorruptFileError: If the magic or the kind is unknown
    """
    return FILE_KINDS[peek_kind(path)](path, stats)

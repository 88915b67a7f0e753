from nano_bwt.textmodel.Text import Text
from nano_bwt.textmodel.BlockPlan import BlockPlan, plan_blocks

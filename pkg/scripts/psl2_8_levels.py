"""The 3-rationality levels of PSL(2,8): three characters at level 2, none at level 1."""

from charlevels.groups import builtin_group
from charlevels.rationality import char_conductor, level_profiles
from charlevels.verify import GroupContext

spec = builtin_group("psl2", 8)
ctx = GroupContext(spec.build(), spec.name)
print(ctx.table.format_text())
print()
for prof in level_profiles(ctx.table, 3):
    chi = ctx.table[prof.index]
    print(f"X.{prof.index + 1}: degree {prof.degree}, conductor {char_conductor(chi)}, "
          f"3-level {prof.level}, achieved at a 3-element: {prof.achieved_at_p_element}")

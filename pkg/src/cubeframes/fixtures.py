"""Built-in data sets and the lesson's worked pipeline texts.

``figure1`` is the standard 3x6 starter grid used throughout the lesson:
three observations of six color-named variables with values drawn from
{3, 4, 5, 6} so every cell has a shape glyph.
"""

from __future__ import annotations

from .model import CubeFrame, make_frame

FIGURE1_NAMES = ("red", "orange", "yellow", "green", "blue", "purple")

FIGURE1_ROWS = (
    (3, 4, 5, 6, 3, 4),
    (4, 3, 5, 4, 6, 4),
    (5, 6, 3, 5, 4, 5),
)


def figure1() -> CubeFrame:
    """The starter 3x6 grid (red, orange, yellow, green, blue, purple)."""
    return make_frame(FIGURE1_NAMES, FIGURE1_ROWS)


def figure1_without_purple() -> CubeFrame:
    """The starter grid with the purple column removed; the mutate warm-up
    task adds it back."""
    return make_frame(FIGURE1_NAMES[:-1], [r[:-1] for r in FIGURE1_ROWS])


FIXTURES = {
    "figure1": figure1,
    "figure1-no-purple": figure1_without_purple,
}


def fixture(name: str) -> CubeFrame:
    return FIXTURES[name]()


# Worked pipeline texts, laid out the way the lesson prints them (several
# span multiple lines; combined-1 deliberately has no space before one |>).
LESSON_PIPELINES: dict[str, str] = {
    "filter-1": ("data |>\n"
                 "  filter(red == 3 |\n"
                 "         green > 4)"),
    "select-1": ("data |>\n"
                 "  select(red, yellow,\n"
                 "         green)"),
    "select-2": ("data |>\n"
                 "  select(-green)"),
    "mutate-purple": ("data |>\n"
                      "  mutate(purple = c(4, 4, 5))"),
    "mutate-1": ("data |>\n"
                 "  mutate(\n"
                 "    blue = ifelse(red > 3, 4, 5)\n"
                 "  )"),
    "mutate-2": ("data |>\n"
                 "  mutate(\n"
                 "    orange = ifelse(blue == 6, 4, 3),\n"
                 "    green = orange + 1\n"
                 "  )"),
    "arrange-1": ("data |>\n"
                  "  arrange(red)"),
    "arrange-2": ("data |>\n"
                  "  arrange(desc(red))"),
    "groupby-0": ("data |>\n"
                  "  group_by(purple)"),
    "groupby-1": ("data |>\n"
                  "  group_by(purple) |>\n"
                  "  arrange(red)"),
    "summary-1": ("data |>\n"
                  "  summarize(\n"
                  "    max(red),\n"
                  "    max(blue),\n"
                  "    min(orange)\n"
                  "  )"),
    "summary-2": ("data |>\n"
                  "  group_by(blue) |>\n"
                  "  summarize(\n"
                  "    min(red),\n"
                  "    max(green)\n"
                  "  )"),
    "combined-1": ("data |>\n"
                   "  filter(blue > 3) |>\n"
                   "  select(red, yellow, blue)|>\n"
                   "  mutate(green = blue - 1)"),
    "combined-2": ("data |>\n"
                   "  filter(blue > 4) |>\n"
                   "  summarize(max(blue))"),
}

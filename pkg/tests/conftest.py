from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from conifold_dt.series import Series, Window

SMALL_WINDOW = Window(x_min=-3, x_max=4, y_max=2, z_min=0, z_max=3)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)


def series_in(window: Window, max_terms: int = 6):
    exps = st.tuples(
        st.integers(window.x_min, window.x_max),
        st.integers(0, window.y_max),
        st.integers(window.z_min, window.z_max),
    )
    return st.dictionaries(exps, rationals, max_size=max_terms).map(lambda d: Series(window, d))


small_series = series_in(SMALL_WINDOW)

import logging
import threading
import time

import pytest

from deltawall.fanout import fan_out


def test_sequential_order():
    assert fan_out(lambda x: x * x, range(5)) == [0, 1, 4, 9, 16]


def test_parallel_order():
    def slow(x):
        time.sleep(0.01 * (5 - x))
        return x, threading.current_thread().name

    results = fan_out(slow, range(5), workers=4)
    assert [value for value, _ in results] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("workers", [1, 3])
def test_errors_are_logged_and_raised(workers, caplog):
    def fail_on_two(x):
        if x == 2:
            raise ArithmeticError("bad point")
        return x

    with pytest.raises(ArithmeticError):
        fan_out(fail_on_two, range(4), workers=workers)
    assert "Evaluation failed for 2: bad point" in caplog.text


def test_empty_input():
    assert fan_out(lambda x: x, [], workers=4) == []

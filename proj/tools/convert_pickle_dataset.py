#!/usr/bin/env python3
"""Convert a pickled event-sequence dataset into the hawkes SequenceFile format.

Assumed source schema (not verified against any published copy):

    {
        "<split>": [                      # e.g. "train", "dev", "test"
            [                             # one sequence
                {"time_since_start": float,
                 "time_since_last_event": float,
                 "type_event": int},
                ...
            ],
            ...
        ],
        "dim_process": int,               # optional, ignored
    }

Event types are discarded, since the models here are univariate.
Each sequence becomes {"T": <time of its last event>, "events": [...]},
written one object per line. Sequences with no events are skipped.
Times are shifted only if --shift-to-zero is given, so that the first
event sits at --first-offset.
"""

import argparse
import json
import pickle
import sys


def sequence_times(sequence, key):
    times = [float(event[key]) for event in sequence]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("event times are not sorted")
    return times


def convert(data, split, key, shift_to_zero, first_offset):
    if split not in data:
        raise KeyError(f"split '{split}' not found; available: {sorted(k for k in data if isinstance(k, str))}")
    for sequence in data[split]:
        times = sequence_times(sequence, key)
        if not times:
            continue
        if shift_to_zero:
            origin = times[0] - first_offset
            times = [t - origin for t in times]
        if times[0] <= 0.0:
            raise ValueError("event times must be positive; try --shift-to-zero")
        yield {"T": times[-1], "events": times}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("pickle_file")
    parser.add_argument("--split", default="test")
    parser.add_argument("--time-key", default="time_since_start")
    parser.add_argument("--shift-to-zero", action="store_true")
    parser.add_argument("--first-offset", type=float, default=1e-6)
    parser.add_argument("--out", default="-")
    args = parser.parse_args(argv)

    with open(args.pickle_file, "rb") as handle:
        data = pickle.load(handle, encoding="latin1")
    out = sys.stdout if args.out == "-" else open(args.out, "w")
    try:
        for record in convert(data, args.split, args.time_key, args.shift_to_zero, args.first_offset):
            out.write(json.dumps(record) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())

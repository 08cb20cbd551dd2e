#!/usr/bin/env python3
"""Regenerates the scenario fixtures under fixtures/.

Each scenario is built from waypoint paths sampled at constant speed.
Corner points are inserted as exact samples so the position/speed
consistency check holds without slack. The script asserts the geometric
facts the demos rely on (which boxes overlap, where boundaries are
crossed) and refuses to write a fixture that violates them.
"""

import json
import math
import os

DT = 0.1
OUT_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def seg_len(a, b):
    return math.hypot(b[0] - a[0], b[1] - a[1])


def sample_path(waypoints, speed, dt=DT):
    """Constant-speed samples along a polyline, corners included exactly."""
    lengths = [seg_len(a, b) for a, b in zip(waypoints, waypoints[1:])]
    total = sum(lengths)
    t_end = total / speed

    times = {round(k * dt, 9) for k in range(int(t_end / dt) + 1)}
    acc = 0.0
    for length in lengths[:-1]:
        acc += length
        times.add(round(acc / speed, 9))
    times.add(round(t_end, 9))
    ordered = sorted(times)
    deduped = [ordered[0]]
    for t in ordered[1:]:
        if t - deduped[-1] > 1e-9:
            deduped.append(t)

    samples = []
    for t in deduped:
        s = min(speed * t, total)
        acc = 0.0
        for i, length in enumerate(lengths):
            if s <= acc + length + 1e-12:
                u = (s - acc) / length
                a, b = waypoints[i], waypoints[i + 1]
                x = a[0] + u * (b[0] - a[0])
                y = a[1] + u * (b[1] - a[1])
                # heading of the segment the point lies on; a corner sample
                # takes the outgoing segment so turning starts at the corner
                j = i
                if u >= 1.0 - 1e-12 and i + 1 < len(lengths):
                    j = i + 1
                a2, b2 = waypoints[j], waypoints[j + 1]
                heading = math.atan2(b2[1] - a2[1], b2[0] - a2[0])
                samples.append([round(t, 6), round(x, 6), round(y, 6),
                                round(heading, 6), speed])
                break
            acc += length
    return samples


def check_consistency(samples):
    for (t0, x0, y0, _, v0), (t1, x1, y1, _, v1) in zip(samples, samples[1:]):
        dist = math.hypot(x1 - x0, y1 - y0)
        expect = 0.5 * (v0 + v1) * (t1 - t0)
        assert abs(dist - expect) < 1e-4, (dist, expect)


def box_corners(cx, cy, heading, half_len, half_wid):
    c, s = math.cos(heading), math.sin(heading)
    return [(cx + dx * c - dy * s, cy + dx * s + dy * c)
            for dx, dy in ((half_len, half_wid), (half_len, -half_wid),
                           (-half_len, -half_wid), (-half_len, half_wid))]


def boxes_overlap(a, b):
    # separating axis test over both boxes' edge normals
    for poly in (a, b):
        for i in range(4):
            ex = poly[(i + 1) % 4][0] - poly[i][0]
            ey = poly[(i + 1) % 4][1] - poly[i][1]
            ax, ay = -ey, ex
            pa = [ax * px + ay * py for px, py in a]
            pb = [ax * px + ay * py for px, py in b]
            if max(pa) < min(pb) or max(pb) < min(pa):
                return False
    return True


def ego_hits_box(samples, ego_half_len, ego_half_wid, box):
    return any(
        boxes_overlap(box_corners(x, y, h, ego_half_len, ego_half_wid), box)
        for _, x, y, h, _ in samples)


def crossings(samples, y_line):
    count = 0
    xs = []
    for (_, x0, y0, _, _), (_, x1, y1, _, _) in zip(samples, samples[1:]):
        if (y0 - y_line) * (y1 - y_line) < 0:
            count += 1
            xs.append(x0 + (x1 - x0) * (y_line - y0) / (y1 - y0))
        assert abs(y0 - y_line) > 1e-3  # no sample may sit on the boundary
    return count, xs


def lane(lane_id, x0, x1, y_lo, y_hi, forward, left_kind, right_kind):
    yc = 0.5 * (y_lo + y_hi)
    if forward:
        return {"id": lane_id,
                "centerline": [[x0, yc], [x1, yc]],
                "left": [[x0, y_hi], [x1, y_hi]],
                "right": [[x0, y_lo], [x1, y_lo]],
                "left_kind": left_kind, "right_kind": right_kind}
    return {"id": lane_id,
            "centerline": [[x1, yc], [x0, yc]],
            "left": [[x1, y_lo], [x0, y_lo]],
            "right": [[x1, y_hi], [x0, y_hi]],
            "left_kind": left_kind, "right_kind": right_kind}


def agent(traj_id, start, heading, speed, duration, length=4.0, width=1.8):
    end = [start[0] + duration * speed * math.cos(heading),
           start[1] + duration * speed * math.sin(heading)]
    return {"class": "vehicle",
            "footprint": {"length": length, "width": width},
            "trajectory": {"id": traj_id,
                           "samples": [[0.0, start[0], start[1], heading, speed],
                                       [duration, end[0], end[1], heading, speed]]}}


EGO = {"length": 4.4, "width": 1.8}
EGO_HL, EGO_HW = EGO["length"] / 2, EGO["width"] / 2


def make_overtake():
    # stationary vehicle in the upper half of the lane; candidates a..d have
    # strictly increasing length: through, in-lane dodge, two outside passes
    obstacle = {"center": [20.0, 1.5], "length": 4.0, "width": 1.8}
    obs_box = box_corners(20.0, 1.5, 0.0, 2.0, 0.9)
    paths = {
        "a": [(0, 0), (45, 0)],
        # dodge completes before the obstacle's longitudinal window so the
        # lateral gap is measured against an untilted footprint
        "b": [(0, 0), (2, 0), (14, -0.65), (26, -0.65), (38, 0), (45, 0)],
        "c": [(0, 0), (4, 0), (14, 4.4), (26, 4.4), (36, 0), (45, 0)],
        "d": [(0, 0), (4, 0), (14, 5.2), (26, 5.2), (36, 0), (45, 0)],
    }
    candidates = []
    lengths = []
    for cid in sorted(paths):
        samples = sample_path(paths[cid], 8.0)
        check_consistency(samples)
        hit = ego_hits_box(samples, EGO_HL, EGO_HW, obs_box)
        assert hit == (cid == "a"), cid
        lengths.append(sum(seg_len(p, q)
                           for p, q in zip(paths[cid], paths[cid][1:])))
        candidates.append({"id": cid, "samples": samples})
    assert lengths == sorted(lengths) and len(set(lengths)) == 4

    return {
        "format": "rbk-scenario/1",
        "params": {"c0": 1.0},
        "ego_footprint": EGO,
        "world": {
            "lanes": [lane("A", -10, 50, -1.75, 1.75, True, "solid", "solid")],
            "obstacles": [obstacle],
        },
        "candidates": candidates,
    }


def make_collision():
    # two vehicles appear ~12 m ahead closing at 1 m/s: one wrong-way in the
    # ego lane, one with the flow of the opposite lane
    candidates = []
    for cid, path in (("inlane", [(0, 0), (40, 0)]),
                      ("swerve", [(0, 0), (4, 0), (9, 3.5), (30, 3.5)])):
        samples = sample_path(path, 9.5)
        check_consistency(samples)
        candidates.append({"id": cid, "samples": samples})

    # bumper gap for the in-lane candidate: 16.2 - 2.0 - 2.2 = 12.0 m
    return {
        "format": "rbk-scenario/1",
        "params": {"a_max": 3.5},
        "ego_footprint": EGO,
        "world": {
            "lanes": [
                lane("A", -10, 40, -1.75, 1.75, True, "double_solid", "solid"),
                lane("B", -10, 40, 1.75, 5.25, False, "double_solid", "solid"),
            ],
            "agents": [
                agent("oncoming", [16.2, 0.0], math.pi, 1.0, 5.0),
                agent("opposite", [17.5, 3.5], math.pi, 1.0, 5.0),
            ],
        },
        "candidates": candidates,
    }


def make_lanechange():
    # parked vehicle in the target lane delays the earliest possible merge;
    # the early merge needs sharp corrections, the late one is gentle but
    # crosses only 10 m before the intersection
    parked = {"center": [10.0, 3.6], "length": 4.0, "width": 1.8}
    parked_box = box_corners(10.0, 3.6, 0.0, 2.0, 0.9)
    paths = {
        "early": [(0, 0), (14, 0), (18, 3.8), (22, 2.9), (26, 3.5), (48, 3.5)],
        "late": [(0, 0), (32, 0), (48, 3.5)],
    }
    expected_cross = {"early": 15.842, "late": 40.0}
    candidates = []
    for cid in sorted(paths):
        samples = sample_path(paths[cid], 8.0)
        check_consistency(samples)
        assert not ego_hits_box(samples, EGO_HL, EGO_HW, parked_box), cid
        n, xs = crossings(samples, 1.75)
        assert n == 1 and abs(xs[0] - expected_cross[cid]) < 0.01, (cid, xs)
        candidates.append({"id": cid, "samples": samples})

    return {
        "format": "rbk-scenario/1",
        "params": {"d_lc": 30.0},
        "ego_footprint": EGO,
        "world": {
            "lanes": [
                lane("A", -10, 62, -1.75, 1.75, True, "dashed", "solid"),
                lane("B", -10, 62, 1.75, 5.25, True, "solid", "dashed"),
            ],
            "intersections": [[[50, -1.75], [58, -1.75], [58, 5.25], [50, 5.25]]],
            "obstacles": [parked],
        },
        "candidates": candidates,
    }


def main():
    scenarios = {
        "overtake.json": make_overtake(),
        "collision.json": make_collision(),
        "lanechange.json": make_lanechange(),
    }
    for name, doc in scenarios.items():
        path = os.path.join(OUT_DIR, name)
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

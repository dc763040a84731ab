#!/usr/bin/env python3
"""Regenerates the synthetic run-all fixture in this directory.

Two camps of 40 users each talk mostly among themselves; two media accounts
and a handful of politicians talk to both. Output is fully determined by SEED.
"""
import csv
import json
import random
from pathlib import Path

SEED = 20220801
HERE = Path(__file__).resolve().parent

rng = random.Random(SEED)

left = [f"u{i:03d}" for i in range(1, 41)]
right = [f"u{i:03d}" for i in range(41, 81)]
neutral = [f"u{i:03d}" for i in range(81, 89)]
pol_left = ["p_left_a", "p_left_b", "p_left_c"]
pol_right = ["p_right_a", "p_right_b", "p_right_c"]
pol_center = ["p_center_a"]
media = ["m_news_a", "m_news_b"]

texts_left = [
    "Οι υποκλοπές πρέπει να ερευνηθούν μέχρι τέλους #υποκλοπες",
    "Ποιος ενέκρινε το predator; Απαντήσεις τώρα #predatorgate",
    "Η υπόθεση των υποκλοπών δεν κλείνει έτσι #υποκλοπές",
    "Ξανά στη Βουλή το θέμα της υποκλοπης",
]
texts_right = [
    "Οι υποκλοπές είναι θέμα της δικαιοσύνης #υποκλοπες",
    "Τοξικότητα γύρω από το predator, ηρεμία χρειάζεται",
    "Η αντιπολίτευση εκμεταλλεύεται τις υποκλοπές #ypoklopes",
    "Νέα στοιχεία για το spyware #spyware",
]
texts_media = [
    "Live: η συζήτηση για τις υποκλοπές στη Βουλή https://news.example/live",
    "Ανάλυση: τι γνωρίζουμε για το predator https://news.example/analysis",
]

days = ["2022-08-01", "2022-08-02", "2022-08-03", "2022-08-04", "2022-08-05", "2022-08-06"]

tweets = []
counter = 0


def post(day, author, kind, text, refs=(), hashtags=None, urls=(), lang="el", media_items=()):
    global counter
    counter += 1
    hh, mm, ss = rng.randrange(24), rng.randrange(60), rng.randrange(60)
    if hashtags is None:
        hashtags = [w[1:] for w in text.split() if w.startswith("#")]
    tweets.append({
        "tweet_id": f"t{counter:05d}",
        "author_id": author,
        "timestamp": f"{day}T{hh:02d}:{mm:02d}:{ss:02d}Z",
        "text": text,
        "lang": lang,
        "kind": kind,
        "hashtags": list(hashtags),
        "urls": list(urls),
        "media": list(media_items),
        "referenced_user_ids": list(refs),
        "referenced_tweet_id": None if kind == "Original" else f"src{counter:05d}",
        "like_count": rng.randrange(50),
        "retweet_count": rng.randrange(20),
        "reply_count": rng.randrange(10),
    })


def camp_activity(day, camp, parties, texts):
    for author in camp:
        if rng.random() < 0.35:
            post(day, author, "Original", rng.choice(texts))
        for _ in range(2):
            r = rng.random()
            if r < 0.45:
                target = rng.choice(camp)
            elif r < 0.75:
                target = rng.choice(parties)
            elif r < 0.90:
                target = rng.choice(media)
            else:
                continue
            if target == author:
                continue
            kind = rng.choice(["Retweet", "Reply", "Quote"])
            text = rng.choice(texts)
            if kind == "Retweet":
                text = "RT " + text
            post(day, author, kind, text, refs=[target])


for day in days:
    camp_activity(day, left, pol_left, texts_left)
    camp_activity(day, right, pol_right, texts_right)
    # a few cross-camp replies
    for _ in range(2):
        a, b = rng.choice(left), rng.choice(right)
        if rng.random() < 0.5:
            a, b = b, a
        post(day, a, "Reply", "Διαφωνώ κάθέτως για τις υποκλοπές", refs=[b])
    for m in media:
        post(day, m, "Original", rng.choice(texts_media), urls=[f"https://news.example/{day}/{m}"],
             media_items=[{"kind": "Image", "url": f"https://img.example/{day}/{m}.jpg"}])
        for target in rng.sample(pol_left, 1) + rng.sample(pol_right, 1):
            post(day, m, "Quote", "Δήλωση για τις υποκλοπές", refs=[target])
    for p in pol_left + pol_right + pol_center:
        post(day, p, "Original", rng.choice(texts_left if p in pol_left else texts_right))
    for u in neutral:
        if rng.random() < 0.5:
            post(day, u, "Original", "Παρακολουθώ τις εξελίξεις για το #watergate")
    # noise the filter has to drop
    post(day, rng.choice(left), "Original", "Καλημέρα σε όλους")
    post(day, rng.choice(right), "Original", "Wiretapping news #predatorgate", lang="en")

tweets.sort(key=lambda t: (t["timestamp"], t["tweet_id"]))
with open(HERE / "tweets.jsonl", "w", encoding="utf-8") as f:
    for t in tweets:
        f.write(json.dumps(t, ensure_ascii=False) + "\n")

with open(HERE / "annotations.csv", "w", newline="", encoding="utf-8") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["user_id", "category", "side"])
    for p in pol_left:
        w.writerow([p, "Political", "Left"])
    for p in pol_right:
        w.writerow([p, "Political", "Right"])
    for p in pol_center:
        w.writerow([p, "Political", "Center"])
    for m in media:
        w.writerow([m, "MediaJournalist", ""])
    w.writerow(["u081", "Organization", ""])

with open(HERE / "follows.csv", "w", newline="", encoding="utf-8") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["follower_id", "followed_political_id"])
    rows = set()
    for camp, own, other in ((left, pol_left, pol_right), (right, pol_right, pol_left)):
        for u in camp:
            if rng.random() < 0.1:
                continue  # no follow data: Neutral
            for p in rng.sample(own, rng.randint(1, 3)):
                rows.add((u, p))
            if rng.random() < 0.3:
                rows.add((u, rng.choice(other)))
            if rng.random() < 0.2:
                rows.add((u, pol_center[0]))
    for u in neutral[:3]:
        rows.add((u, pol_center[0]))
    for row in sorted(rows):
        w.writerow(row)

config = {
    "tweets": "tweets.jsonl",
    "annotations": "annotations.csv",
    "follows": "follows.csv",
    "out": "out",
    "from": "2022-08-01",
    "to": "2022-08-06",
    "k": 10,
    "prevalent_top_k": 20,
    "emit_both_isolated_modes": True,
}
with open(HERE / "config.json", "w", encoding="utf-8") as f:
    json.dump(config, f, indent=2)
    f.write("\n")

#!/usr/bin/env python3
"""Writes the mini-pheme/ fixture: 3 synthetic events x 10 threads in the
PHEME directory layout. All tweets are invented. Re-running is idempotent."""
import json
import pathlib
import shutil

ROOT = pathlib.Path(__file__).resolve().parent / "mini-pheme"

EVENTS = {
    "harbour-siege": {
        "rumours": [
            "BREAKING: gunman reportedly holding hostages at the harbour cafe, terrified staff inside #HarbourSiege http://t.co/a1",
            "Unconfirmed reports say two hostages shot dead. Terrible, so sad. Pray for them 🙏 #HarbourSiege",
            "Rumour: police believe there may be a second bomb near the ferry terminal?! #HarbourSiege",
            "Apparently the gunman demanded a flag and a phone call with the PM... scary stuff @newsdesk",
            "Hearing that hostages were forced to hold a banner in the window. Is this true? #HarbourSiege",
        ],
        "non-rumours": [
            "Police confirm an armed incident at Harbour Place. Avoid the area, updates to follow. http://t.co/b2",
            "Premier: the state's response is being coordinated by police. Press conference at 3pm.",
            "Roads around the harbour are closed; ferries are running to a modified schedule #HarbourSiege",
            "Our thoughts are with everyone affected. We will keep you informed with official information only.",
            "The cafe has been evacuated this evening according to officials. No further details yet.",
        ],
        "reactions": {
            "rumours": [
                ["@newsdesk this is horrifying, so scared for them 😢", "Is this confirmed? Source please", "OMG praying for the hostages"],
                ["RIP. Absolutely heartbreaking", "Not confirmed by police yet, don't spread it", "Devastated.", "   "],
                ["Where did you hear that??", "This is fake, stop it"],
                ["Terrifying. Stay safe everyone", "Who is the gunman?", "Scary scary stuff"],
                ["I don't believe this", "Wow. Shocking images"],
            ],
            "non-rumours": [
                ["Thanks for the update, stay safe", "Good work by the police"],
                ["What time is the press conference?"],
                ["My ferry was cancelled, thanks for letting us know", "Roads are chaos right now", "Any update on the trains?"],
                ["Thank you for the official information", "Stay safe all"],
                ["Great news that people are out", "Relieved to hear this", "Well done to the officers"],
            ],
        },
    },
    "stadium-blackout": {
        "rumours": [
            "Secret concert tonight at the stadium after the blackout?? Fans say the band is already inside!",
            "Rumour has it the power cut was deliberate, someone sabotaged the grid. Shocking if true #Blackout",
            "Apparently thousands trapped in the dark at the stadium, panic on the stairs http://t.co/c3",
            "Heard the singer disappeared right before the show. Mysterious... #Blackout",
        ],
        "non-rumours": [
            "Stadium management: the power outage affected the north stand. Lights restored at 9:40pm.",
            "Tonight's match is postponed; tickets remain valid for the new date. Statement: http://t.co/d4",
            "Fans were asked to stay in their seats while staff restored power. Everyone left safely.",
            "The energy company confirmed a fault at a local substation caused the blackout.",
            "Trains will run late tonight to help fans get home after the postponed match.",
            "Official: no injuries reported during the stadium blackout. Thank you for your patience.",
        ],
        "reactions": {
            "rumours": [
                ["No way, a secret show? Amazing", "Source?", "Wow I'm going now"],
                ["Sabotage? Come on, that's a conspiracy", "Scary if true"],
                ["Oh no, hope everyone is ok 😢", "My brother is there and he's fine", "Stop spreading panic"],
                ["What? Where did she go?", "Probably just late lol"],
            ],
            "non-rumours": [
                ["Thanks for the update"],
                ["Annoying but fair enough", "Will refunds be available?"],
                ["Staff were great, thank you"],
                ["Makes sense, thanks"],
                ["Great, thank you!", "Helpful, cheers"],
                ["Glad everyone is safe", "Good to hear"],
            ],
        },
    },
    "gallery-fire": {
        "rumours": [
            "The museum fire destroyed the entire art collection, priceless paintings lost forever #GalleryFire",
            "Reports say the fire was started on purpose by a former employee?! #GalleryFire",
            "Apparently a famous painting was stolen before the fire. Shocking. http://t.co/e5",
            "Unconfirmed: the museum director has gone missing since the blaze",
            "People are saying the collection was sold in secret years ago and the fire covers it up",
            "Hearing two firefighters are injured, one critically. Praying 🙏",
        ],
        "non-rumours": [
            "Fire crews have contained the blaze at the city gallery. The building has been evacuated.",
            "Gallery statement: most works were stored off-site for renovation and are safe.",
            "The cause of the fire is under investigation, officials said this afternoon.",
            "Road closures remain in place around the gallery until tomorrow morning.",
        ],
        "reactions": {
            "rumours": [
                ["Heartbreaking loss for the city 😢", "Is this confirmed?", "So sad"],
                ["That's a serious accusation", "Source??"],
                ["Which painting?", "No way"],
                ["Weird. Hope he's ok"],
                ["That's ridiculous", "Conspiracy theory again", "Could be true though"],
                ["Praying for them", "Get well soon", "Terrible news"],
            ],
            "non-rumours": [
                ["Thank you firefighters!", "Relief"],
                ["Great news, thanks for the update"],
                ["Hope they find the cause soon"],
                ["Thanks for letting us know", "Which roads exactly?"],
            ],
        },
    },
}


def tweet(tid, text, reply_to=None, user="user"):
    return {
        "id_str": tid,
        "id": int(tid),
        "text": text,
        "created_at": "Mon Dec 15 03:00:00 +0000 2014",
        "in_reply_to_status_id_str": reply_to,
        "user": {"screen_name": user},
    }


def main():
    if ROOT.exists():
        shutil.rmtree(ROOT)
    next_id = 500000000000000000
    for e_idx, (event, spec) in enumerate(EVENTS.items()):
        event_dir = ROOT / f"{event}-all-rnr-threads"
        for label in ("rumours", "non-rumours"):
            (event_dir / label).mkdir(parents=True, exist_ok=True)
            for t_idx, text in enumerate(spec[label]):
                next_id += 1
                sid = str(next_id)
                thread = event_dir / label / sid
                (thread / "source-tweets").mkdir(parents=True)
                (thread / "reactions").mkdir()
                (thread / "source-tweets" / f"{sid}.json").write_text(
                    json.dumps(tweet(sid, text, user=f"src{e_idx}{t_idx}")))
                parent = sid
                for r_idx, rtext in enumerate(spec["reactions"][label][t_idx]):
                    next_id += 1
                    rid = str(next_id)
                    # every third reaction replies to the previous reaction
                    reply_to = parent if r_idx % 3 != 2 else str(next_id - 1)
                    (thread / "reactions" / f"{rid}.json").write_text(
                        json.dumps(tweet(rid, rtext, reply_to, user=f"re{r_idx}")))
                (thread / "annotation.json").write_text(json.dumps({"is_rumour": label[:-1]}))


if __name__ == "__main__":
    main()

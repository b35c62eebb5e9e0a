package com.demo.app;

import java.util.ArrayList;
import java.util.List;

public class CommandParser {
    public static final class Command {
        private final String verb;
        private final List<String> args;

        Command(String verb, List<String> args) {
            this.verb = verb;
            this.args = args;
        }

        public String verb() {
            return verb;
        }

        public List<String> args() {
            return args;
        }
    }

    public Command parse(String line) {
        List<String> tokens = new ArrayList<>();
        StringBuilder cur = new StringBuilder();
        boolean quoted = false;
        for (int i = 0; i < line.length(); i++) {
            char c = line.charAt(i);
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ' ' && !quoted) {
                if (cur.length() > 0) {
                    tokens.add(cur.toString());
                    cur.setLength(0);
                }
            } else {
                cur.append(c);
            }
        }
        if (quoted) {
            throw new IllegalArgumentException("unterminated quote");
        }
        if (cur.length() > 0) tokens.add(cur.toString());
        if (tokens.isEmpty()) return null;
        return new Command(tokens.get(0).toLowerCase(), tokens.subList(1, tokens.size()));
    }
}

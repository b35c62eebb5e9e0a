package com.demo.util;

public final class Strings {
    private Strings() {
    }

    public static boolean isBlank(String s) {
        return s == null || s.trim().isEmpty();
    }

    public static String normalize(String s) {
        if (s == null) return "";
        StringBuilder sb = new StringBuilder();
        boolean space = false;
        for (char c : s.trim().toCharArray()) {
            if (Character.isWhitespace(c)) {
                if (!space) sb.append(' ');
                space = true;
            } else {
                sb.append(Character.toLowerCase(c));
                space = false;
            }
        }
        return sb.toString();
    }

    public static String pad(String s, int width) {
        StringBuilder sb = new StringBuilder(s);
        while (sb.length() < width) {
            sb.append(' ');
        }
        return sb.toString();
    }
}

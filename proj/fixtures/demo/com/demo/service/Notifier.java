package com.demo.service;

import com.demo.model.Member;

public interface Notifier {
    boolean send(Member to, String message);
}
